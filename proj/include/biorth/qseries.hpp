#pragma once

// q-shifted factorials and terminating basic hypergeometric sums.

#include <span>
#include <vector>

#include "biorth/rational.hpp"

namespace biorth {

/// (x; q)_n = prod_{k<n} (1 - x q^k). Empty product for n = 0.
inline Rational qpoch(const Rational& x, const Rational& q, unsigned n)
{
    Rational result = 1;
    Rational xqk = x;
    for (unsigned k = 0; k < n; ++k) {
        result *= 1 - xqk;
        xqk *= q;
    }
    return result;
}

/// (x_1, ..., x_r; q)_n, the product of the single-argument factorials.
inline Rational qpoch_multi(std::span<const Rational> xs, const Rational& q, unsigned n)
{
    Rational result = 1;
    for (const auto& x : xs) result *= qpoch(x, q, n);
    return result;
}

inline Rational qpoch_multi(std::initializer_list<Rational> xs, const Rational& q, unsigned n)
{
    return qpoch_multi(std::span<const Rational>(xs.begin(), xs.size()), q, n);
}

/// Terminating r-phi-s sum, truncated at k = n.
///
/// Termination is the caller's contract: one numerator parameter is q^{-n}.
/// Each term carries ((-1)^k q^{k(k-1)/2})^{1+s-r}; for the balanced 4-phi-3
/// used by the Askey-Wilson polynomials that exponent is zero.
inline Rational phi_terminating(std::span<const Rational> numerator,
                                std::span<const Rational> denominator,
                                const Rational& q, const Rational& z, unsigned n)
{
    const long r = static_cast<long>(numerator.size());
    const long s = static_cast<long>(denominator.size());
    const long power = 1 + s - r;

    Rational sum = 1;
    Rational term = 1;  // ratio-updated k-th term without the sign/power factor
    Rational zk = 1;
    for (unsigned k = 1; k <= n; ++k) {
        const Rational qk1 = qpow(q, static_cast<long>(k) - 1);
        Rational num = 1;
        for (const auto& a : numerator) num *= 1 - a * qk1;
        Rational den = 1 - qpow(q, static_cast<long>(k));
        for (const auto& b : denominator) den *= 1 - b * qk1;
        if (den == 0) throw DenominatorVanishes("phi_terminating: vanishing denominator factor at k = " + std::to_string(k));
        term *= num / den;
        zk *= z;

        Rational factor = 1;
        if (power != 0) {
            // ((-1)^k q^{C(k,2)})^{power}
            const long binom = static_cast<long>(k) * (static_cast<long>(k) - 1) / 2;
            factor = qpow(q, binom * power);
            if ((k % 2 == 1) && (power % 2 != 0)) factor = -factor;
        }
        sum += term * factor * zk;
    }
    return sum;
}

inline Rational phi_terminating(std::initializer_list<Rational> numerator,
                                std::initializer_list<Rational> denominator,
                                const Rational& q, const Rational& z, unsigned n)
{
    return phi_terminating(std::span<const Rational>(numerator.begin(), numerator.size()),
                           std::span<const Rational>(denominator.begin(), denominator.size()), q, z, n);
}

}  // namespace biorth
