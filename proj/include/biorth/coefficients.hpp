#pragma once

// Scalar coefficient sequences shared by the factorization, the polynomial
// recurrences and the tridiagonal representations: g_j, d_n^natural,
// e_n^natural. Every formula is evaluated literally, so a vanishing
// denominator is reported even where it would cancel.

#include <string>

#include "biorth/params.hpp"

namespace biorth {

namespace detail {
inline void require_nonzero(const Rational& x, const char* what, long index)
{
    if (x == 0) throw SingularParams(std::string(what) + ": vanishing denominator at index " + std::to_string(index));
}
}  // namespace detail

/// g_j = (1-abcd q^{j-1})(1-q^{j+1})(1-ab q^j)(1-bc q^j)(1-ad q^j)(1-cd q^j)
///       / ((1-abcd q^{2j-1})(1-abcd q^{2j})^2(1-abcd q^{2j+1}))
inline Rational g_coeff(const AWParams& p, long j)
{
    const Rational A = p.abcd();
    const Rational qj = qpow(p.q, j);
    const Rational den = (1 - A * qpow(p.q, 2 * j - 1)) * (1 - A * qpow(p.q, 2 * j)) *
                         (1 - A * qpow(p.q, 2 * j)) * (1 - A * qpow(p.q, 2 * j + 1));
    detail::require_nonzero(den, "g_coeff", j);
    const Rational num = (1 - A * qpow(p.q, j - 1)) * (1 - qpow(p.q, j + 1)) * (1 - p.a * p.b * qj) *
                         (1 - p.b * p.c * qj) * (1 - p.a * p.d * qj) * (1 - p.c * p.d * qj);
    return num / den;
}

namespace detail {

// Shared shape of d_n^natural and e_n^natural. With (x, y, u, v) = (b, d, a, c)
// this is d_n; with (a, c, b, d) it is e_n.
inline Rational natural_diagonal(const Rational& x, const Rational& y, const Rational& u, const Rational& v,
                                 const Rational& q, long n, const char* what)
{
    const Rational A = x * y * u * v;
    const Rational xy = x * y, xpy = x + y, upv = u + v;
    const Rational den = (1 - qpow(q, 2 * n - 2) * A) * (1 - qpow(q, 2 * n) * A);
    require_nonzero(den, what, n);
    const Rational bracket = xy * upv + xpy * q - A * xpy * qpow(q, n - 1) - (xy * upv + A * xpy) * qpow(q, n) -
                             xy * upv * qpow(q, n + 1) + A * xy * upv * qpow(q, 2 * n - 1) +
                             A * xpy * qpow(q, 2 * n);
    return qpow(q, n - 1) / den * bracket;
}

}  // namespace detail

/// Diagonal of the d operator in both tridiagonal forms.
inline Rational d_natural(const AWParams& p, long n)
{
    return detail::natural_diagonal(p.b, p.d, p.a, p.c, p.q, n, "d_natural");
}

/// Diagonal of the e operator; mirror of d_natural under (a,c) <-> (b,d).
inline Rational e_natural(const AWParams& p, long n)
{
    return detail::natural_diagonal(p.a, p.c, p.b, p.d, p.q, n, "e_natural");
}

/// Throws SingularParams unless every denominator used up to truncation
/// `horizon` is nonzero. The abcd q^k range starts at k = -2 because
/// d_0^natural and e_0^natural carry a (1 - abcd/q^2) factor as displayed.
inline void validate(const AWParams& p, long horizon)
{
    if (p.q == 0 || p.q == 1) throw UnsupportedQ("q must not be 0 or 1");
    const Rational A = p.abcd();
    for (long k = -2; k <= 2 * horizon + 1; ++k)
        if (A * qpow(p.q, k) == 1) throw SingularParams("abcd q^" + std::to_string(k) + " = 1");
    for (long k = 0; k <= horizon; ++k) {
        if (p.a * p.c * qpow(p.q, k) == 1) throw SingularParams("ac q^" + std::to_string(k) + " = 1");
        if (p.b * p.d * qpow(p.q, k) == 1) throw SingularParams("bd q^" + std::to_string(k) + " = 1");
    }
    for (long k = 0; k < horizon; ++k)
        if (g_coeff(p, k) == 0) throw SingularParams("g_" + std::to_string(k) + " = 0");
}

inline bool is_valid(const AWParams& p, long horizon)
{
    try {
        validate(p, horizon);
        return true;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace biorth
