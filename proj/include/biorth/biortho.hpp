#pragma once

// The bi-orthogonal pair P_n(d), Q_n(e): two construction routes (rows and
// columns of the inverse factors, and the three-term recurrences), the monomial
// expansion identities, the bordered-determinant formulas, and the check
// L(P_n Q_m) = Lambda_n delta_{n,m}.

#include <string>
#include <vector>

#include "biorth/ldu.hpp"

namespace biorth {

/// Dense polynomial, ascending coefficients.
using Poly = std::vector<Rational>;

enum class Variable { d, e, x };

inline const char* to_string(Variable v)
{
    switch (v) {
        case Variable::d: return "d";
        case Variable::e: return "e";
        case Variable::x: return "x";
    }
    return "?";
}

/// coeffs[n] has exactly n + 1 entries and leading coefficient 1.
struct PolySeq {
    Variable variable = Variable::d;
    std::vector<Poly> coeffs;

    long max_degree() const { return static_cast<long>(coeffs.size()) - 1; }
    const Poly& operator[](long n) const { return coeffs[static_cast<size_t>(n)]; }
    friend bool operator==(const PolySeq&, const PolySeq&) = default;
};

namespace poly {

inline Poly times_x_minus(const Poly& p, const Rational& shift)
{
    Poly out(p.size() + 1, Rational(0));
    for (size_t k = 0; k < p.size(); ++k) {
        out[k + 1] += p[k];
        out[k] -= shift * p[k];
    }
    return out;
}

/// out += s * p (out is grown as needed).
inline void add_scaled(Poly& out, const Poly& p, const Rational& s)
{
    if (out.size() < p.size()) out.resize(p.size(), Rational(0));
    for (size_t k = 0; k < p.size(); ++k) out[k] += s * p[k];
}

inline Rational evaluate(const Poly& p, const Rational& x)
{
    Rational acc = 0;
    for (size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
    return acc;
}

/// Drops trailing zero coefficients (keeps at least one entry).
inline Poly trimmed(Poly p)
{
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    return p;
}

}  // namespace poly

/// P_n(d) = sum_k Linv_{n,k} d^k, Q_n(e) = sum_k e^k Uinv_{k,n}.
inline PolySeq polys_from_inverse(const AWParams& p, long N, Variable var)
{
    PolySeq seq{var, {}};
    if (var == Variable::d) {
        const TriangularFactor Li = build_L_inverse(p, N);
        for (long n = 0; n <= N; ++n) {
            Poly c(static_cast<size_t>(n) + 1);
            for (long k = 0; k <= n; ++k) c[static_cast<size_t>(k)] = Li(n, k);
            seq.coeffs.push_back(std::move(c));
        }
    } else if (var == Variable::e) {
        const TriangularFactor Ui = build_U_inverse(p, N);
        for (long n = 0; n <= N; ++n) {
            Poly c(static_cast<size_t>(n) + 1);
            for (long k = 0; k <= n; ++k) c[static_cast<size_t>(k)] = Ui(k, n);
            seq.coeffs.push_back(std::move(c));
        }
    } else {
        throw std::invalid_argument("polys_from_inverse: variable must be d or e");
    }
    return seq;
}

/// P_{n+1} = (x - d_n) P_n + bd q^{n-1} g_{n-1} P_{n-1}; Q mirrors with e_n and ac.
inline PolySeq polys_from_recurrence(const AWParams& p, long N, Variable var)
{
    if (var == Variable::x) throw std::invalid_argument("polys_from_recurrence: variable must be d or e");
    const bool is_d = var == Variable::d;
    const Rational pair = is_d ? Rational(p.b * p.d) : Rational(p.a * p.c);
    PolySeq seq{var, {Poly{Rational(1)}}};
    for (long n = 0; n < N; ++n) {
        const Rational diag = is_d ? d_natural(p, n) : e_natural(p, n);
        Poly next = poly::times_x_minus(seq[n], diag);
        if (n >= 1) poly::add_scaled(next, seq[n - 1], pair * qpow(p.q, n - 1) * g_coeff(p, n - 1));
        seq.coeffs.push_back(std::move(next));
    }
    return seq;
}

/// d^n = sum_k L_{n,k} P_k(d) and e^n = sum_k Q_k(e) U_{k,n}, coefficientwise.
inline VerificationReport monomial_expansion_check(const AWParams& p, long N)
{
    VerificationReport rep;
    rep.suite = "monomial_expansion";
    rep.params = to_key_values(p);
    rep.n = N;
    const TriangularFactor L = build_L(p, N), U = build_U(p, N);
    const PolySeq P = polys_from_inverse(p, N, Variable::d), Q = polys_from_inverse(p, N, Variable::e);

    auto check = [&](const char* name, auto&& weight, const PolySeq& seq) {
        for (long n = 0; n <= N; ++n) {
            Poly sum;
            for (long k = 0; k <= n; ++k) poly::add_scaled(sum, seq[k], weight(n, k));
            Poly want(static_cast<size_t>(n) + 1, Rational(0));
            want.back() = 1;
            if (poly::trimmed(sum) != want) {
                rep.fail(name, Counterexample{{n}, "x^" + std::to_string(n), "mismatch", "coefficient identity fails"});
                return;
            }
        }
        rep.pass(name);
    };
    check("d_powers_in_P_basis", [&](long n, long k) { return L(n, k); }, P);
    check("e_powers_in_Q_basis", [&](long n, long k) { return U(k, n); }, Q);
    return rep;
}

/// L(P_n Q_m) = Lambda_n delta_{n,m} with Lambda_n = D_n, for all n, m <= N.
inline VerificationReport biorthogonality_check(const AWParams& p, long N)
{
    VerificationReport rep;
    rep.suite = "biorthogonality";
    rep.params = to_key_values(p);
    rep.n = N;
    Stopwatch sw;
    BimomentTriangle B(p);
    B.extend(2 * N);
    const PolySeq P = polys_from_recurrence(p, N, Variable::d), Q = polys_from_recurrence(p, N, Variable::e);
    const DiagonalFactor D = build_D(p, N);

    bool ok = true;
    for (long n = 0; n <= N && ok; ++n)
        for (long m = 0; m <= N && ok; ++m) {
            Rational value = 0;
            for (long i = 0; i <= n; ++i)
                for (long j = 0; j <= m; ++j) value += P[n][size_t(i)] * Q[m][size_t(j)] * B.at(i, j);
            const Rational want = n == m ? D[n] : Rational(0);
            if (value != want) {
                rep.fail("L_PnQm_equals_Lambda_delta", Counterexample{{n, m}, to_string(want), to_string(value), ""});
                ok = false;
            }
        }
    if (ok) rep.pass("L_PnQm_equals_Lambda_delta");

    bool nonzero = true;
    for (const auto& d : D.entries) nonzero = nonzero && d != 0;
    rep.record("Lambda_nonzero", nonzero);
    rep.timings_ms["total"] = sw.elapsed_ms();
    return rep;
}

/// Both routes agree coefficientwise and every polynomial is monic of exact degree.
inline VerificationReport polynomial_routes_check(const AWParams& p, long N)
{
    VerificationReport rep;
    rep.suite = "polynomial_routes";
    rep.params = to_key_values(p);
    rep.n = N;
    for (Variable v : {Variable::d, Variable::e}) {
        const PolySeq inv = polys_from_inverse(p, N, v), rec = polys_from_recurrence(p, N, v);
        const std::string tag = to_string(v);
        long bad = -1;
        for (long n = 0; n <= N && bad < 0; ++n)
            if (inv[n] != rec[n]) bad = n;
        rep.record("routes_agree_" + tag, bad < 0, Counterexample{{bad}, "inverse-factor route", "recurrence route", ""});
        bool monic = true;
        for (long n = 0; n <= N; ++n) monic = monic && rec[n].size() == size_t(n) + 1 && rec[n].back() == 1;
        rep.record("monic_" + tag, monic);
    }
    return rep;
}

namespace detail {

// Laplace expansion along the first row; only used for tiny bordered minors.
inline Rational laplace_determinant(const Matrix<Rational>& m)
{
    const size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    Rational det = 0;
    for (size_t col = 0; col < n; ++col) {
        if (m(0, col) == 0) continue;
        Matrix<Rational> minor(n - 1, n - 1);
        for (size_t i = 1; i < n; ++i)
            for (size_t j = 0, jj = 0; j < n; ++j) {
                if (j == col) continue;
                minor(i - 1, jj++) = m(i, j);
            }
        Rational term = m(0, col) * laplace_determinant(minor);
        if (col % 2) det -= term;
        else det += term;
    }
    return det;
}

}  // namespace detail

inline constexpr long kBorderedLimit = 6;

/// P_n and Q_n from the bordered-determinant formulas, by cofactor expansion
/// along the border. Returns {P_n, Q_n}.
inline std::pair<Poly, Poly> bordered_polynomials(const AWParams& p, long n)
{
    if (n > kBorderedLimit) throw SizeLimit("bordered determinants limited to n <= 6");
    if (n == 0) return {Poly{Rational(1)}, Poly{Rational(1)}};
    const Matrix<Rational> B = bimoment_block(p, n).entries;
    const Rational norm = detail::laplace_determinant(B.leading_block(size_t(n)));
    if (norm == 0) throw SingularParams("bordered determinant: det B^(n-1) = 0");

    const size_t N = size_t(n);
    Poly P(N + 1), Q(N + 1);
    for (size_t k = 0; k <= N; ++k) {
        // P: border is the last column (1, d, ..., d^n); drop row k and that column.
        Matrix<Rational> mp(N, N);
        for (size_t i = 0, ii = 0; i <= N; ++i) {
            if (i == k) continue;
            for (size_t j = 0; j < N; ++j) mp(ii, j) = B(i, j);
            ++ii;
        }
        // Q: border is the last row (1, e, ..., e^n); drop that row and column k.
        Matrix<Rational> mq(N, N);
        for (size_t i = 0; i < N; ++i)
            for (size_t j = 0, jj = 0; j <= N; ++j) {
                if (j == k) continue;
                mq(i, jj++) = B(i, j);
            }
        const Rational sign = (k + N) % 2 ? Rational(-1) : Rational(1);
        P[k] = sign * detail::laplace_determinant(mp) / norm;
        Q[k] = sign * detail::laplace_determinant(mq) / norm;
    }
    return {P, Q};
}

inline bool bordered_determinant_check(const AWParams& p, long n)
{
    auto [P, Q] = bordered_polynomials(p, n);
    const PolySeq Pr = polys_from_recurrence(p, n, Variable::d), Qr = polys_from_recurrence(p, n, Variable::e);
    return P == Pr[n] && Q == Qr[n];
}

inline nlohmann::ordered_json to_json(const PolySeq& s)
{
    nlohmann::ordered_json j;
    j["variable"] = to_string(s.variable);
    j["N"] = s.max_degree();
    nlohmann::ordered_json all = nlohmann::ordered_json::array();
    for (const auto& c : s.coeffs) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (const auto& v : c) row.push_back(to_string(v));
        all.push_back(std::move(row));
    }
    j["coeffs"] = std::move(all);
    return j;
}

}  // namespace biorth
