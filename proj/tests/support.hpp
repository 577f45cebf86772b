#pragma once

// Shared fixtures and brute-force reference routines for the test suite.
// Everything here is written independently of the library's own algorithms.

#include <random>
#include <vector>

#include "biorth/biorth.hpp"

namespace testing_support {

using biorth::AWParams;
using biorth::Matrix;
using biorth::Rational;

inline Rational R(long n, long d = 1)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline AWParams canonical() { return AWParams::make(1, R(1, 2), R(-1, 3), R(-1, 4), R(1, 2)); }

inline AWParams three_parameter() { return AWParams::make(R(1, 2), R(1, 3), 0, 0, R(1, 3)); }

/// Sets used by the cross-module properties: generic, three-parameter, and
/// one with abcd q close to 1.
inline std::vector<AWParams> sample_sets()
{
    return {
        canonical(),
        AWParams::make(2, R(3, 2), R(-1, 5), R(-1, 7), R(1, 4)),
        AWParams::make(R(3, 4), R(2, 3), R(-2, 5), R(-1, 6), R(1, 4)),
        AWParams::make(R(5, 3), R(1, 4), R(-1, 7), R(-3, 5), R(3, 5)),
        three_parameter(),
        AWParams::make(4, 3, R(-1, 5), R(-83, 100), R(1, 2)),
    };
}

/// Random small rationals p/q with |p| <= 9, 1 <= q <= 9.
class RationalGen {
public:
    explicit RationalGen(unsigned seed) : rng_(seed) {}

    Rational next(bool allow_zero = true)
    {
        std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
        for (;;) {
            Rational r(num(rng_), den(rng_));
            r.canonicalize();
            if (allow_zero || r != 0) return r;
        }
    }

    /// Random parameters valid to `horizon`, q in (0, 1).
    AWParams params(long horizon)
    {
        std::uniform_int_distribution<int> qn(1, 8);
        for (;;) {
            const Rational q(qn(rng_), 9);
            AWParams p{next(false), next(false), next(false), next(false), Rational(q)};
            p.q.canonicalize();
            if (biorth::is_valid(p, horizon)) return p;
        }
    }

    std::mt19937& engine() { return rng_; }

private:
    std::mt19937 rng_;
};

/// Plain Gaussian elimination on rationals with row swaps.
inline Rational gauss_determinant(Matrix<Rational> m)
{
    const size_t n = m.rows();
    Rational det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (size_t i = c + 1; i < n; ++i) {
            const Rational f = m(i, c) / m(c, c);
            for (size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

struct Doolittle {
    Matrix<Rational> L, U;
    std::vector<Rational> D;
};

/// B = L D U with unit triangular L, U by direct elimination, no pivoting.
inline Doolittle doolittle(const Matrix<Rational>& B)
{
    const size_t n = B.rows();
    Doolittle out{Matrix<Rational>::identity(n), Matrix<Rational>::identity(n), {}};
    Matrix<Rational> W = B;
    for (size_t k = 0; k < n; ++k) {
        const Rational pivot = W(k, k);
        out.D.push_back(pivot);
        for (size_t j = k + 1; j < n; ++j) out.U(k, j) = W(k, j) / pivot;
        for (size_t i = k + 1; i < n; ++i) out.L(i, k) = W(i, k) / pivot;
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) W(i, j) -= W(i, k) * W(k, j) / pivot;
    }
    return out;
}

/// Expands g_j literally, with no cancellation of common factors.
inline Rational g_literal(const AWParams& p, long j)
{
    using biorth::qpow;
    const Rational A = p.abcd();
    const Rational num = (1 - A * qpow(p.q, j - 1)) * (1 - qpow(p.q, j + 1)) * (1 - p.a * p.b * qpow(p.q, j)) *
                         (1 - p.b * p.c * qpow(p.q, j)) * (1 - p.a * p.d * qpow(p.q, j)) * (1 - p.c * p.d * qpow(p.q, j));
    const Rational den = (1 - A * qpow(p.q, 2 * j - 1)) * (1 - A * qpow(p.q, 2 * j)) * (1 - A * qpow(p.q, 2 * j)) *
                         (1 - A * qpow(p.q, 2 * j + 1));
    return num / den;
}

}  // namespace testing_support

namespace testing_support {

/// <0| X |0> for X a product of the monic-basis matrices of d and e, read off
/// a truncation large enough that the edge is never reached.
inline Rational matrix_element(const AWParams& p, const std::string& word)
{
    const size_t N = word.size() + 2;
    auto [D, E] = biorth::rep_rational(p, N);
    const Matrix<Rational> d = D.dense(), e = E.dense();
    std::vector<Rational> v(N, Rational(0));
    v[0] = 1;
    for (size_t k = word.size(); k-- > 0;) {
        const Matrix<Rational>& m = word[k] == 'd' ? d : e;
        std::vector<Rational> next(N, Rational(0));
        for (size_t i = 0; i < N; ++i)
            for (size_t j = 0; j < N; ++j)
                if (m(i, j) != 0) next[i] += m(i, j) * v[j];
        v = std::move(next);
    }
    return v[0];
}

}  // namespace testing_support
