#pragma once

// Hopping rates (alpha, beta, gamma, delta, q) and the Askey-Wilson style
// parameters (a, b, c, d, q) they map to.
//
// The forward map rates -> (a, b, c, d) involves square roots, so the exact
// pipeline starts from rational (a, b, c, d, q) and derives rates with
// to_rates(). to_aw() is the floating forward map; to_aw_exact() succeeds
// only when both discriminants are rational squares.

#include <map>
#include <optional>
#include <string>

#include "biorth/rational.hpp"

namespace biorth {

using KeyValueMap = std::map<std::string, std::string>;

struct HoppingRates {
    Rational alpha, beta, gamma, delta, q;

    /// alpha, beta > 0; gamma, delta >= 0; 0 <= q < 1.
    bool is_valid() const
    {
        return alpha > 0 && beta > 0 && gamma >= 0 && delta >= 0 && q >= 0 && q < 1;
    }

    friend bool operator==(const HoppingRates&, const HoppingRates&) = default;
};

struct AWParams {
    Rational a, b, c, d, q;

    /// Rejects q in {0, 1}; all other checks are horizon dependent (see validate()).
    static AWParams make(Rational a, Rational b, Rational c, Rational d, Rational q)
    {
        if (q == 0 || q == 1) throw UnsupportedQ("q must not be 0 or 1");
        return AWParams{std::move(a), std::move(b), std::move(c), std::move(d), std::move(q)};
    }

    Rational qprime() const { return 1 - q; }
    Rational abcd() const { return a * b * c * d; }

    /// (a, b, c, d) -> (b, a, d, c): transposes the bimoment matrix.
    AWParams swap_ab_cd() const { return AWParams{b, a, d, c, q}; }
    /// (a, b, c, d) -> (d, c, b, a): also transposes the bimoment matrix.
    AWParams swap_ad_bc() const { return AWParams{d, c, b, a, q}; }

    friend bool operator==(const AWParams&, const AWParams&) = default;
};

/// Floating image of the forward map; q = 0 is allowed here.
struct ApproxAWParams {
    Float a, b, c, d, q;
};

/// Exact inverse of the forward map: a, c are the roots of
/// alpha x^2 - (1 - q - alpha + gamma) x - gamma = 0, likewise b, d with beta, delta.
inline HoppingRates to_rates(const AWParams& p)
{
    const Rational ac1 = (1 + p.a) * (1 + p.c);
    const Rational bd1 = (1 + p.b) * (1 + p.d);
    if (ac1 == 0 || bd1 == 0) throw InvalidParams("to_rates: (1+a)(1+c) or (1+b)(1+d) vanishes");
    if (p.a * p.c > 0 || p.b * p.d > 0) throw InvalidParams("to_rates: ac > 0 or bd > 0 gives negative gamma/delta");
    HoppingRates r;
    r.q = p.q;
    r.alpha = p.qprime() / ac1;
    r.gamma = -p.a * p.c * r.alpha;
    r.beta = p.qprime() / bd1;
    r.delta = -p.b * p.d * r.beta;
    return r;
}

namespace detail {

inline std::pair<Float, Float> roots_float(const Rational& rate_in, const Rational& rate_out,
                                           const Rational& q, unsigned bits)
{
    // rate_in plays alpha (or beta), rate_out plays gamma (or delta).
    const Rational lin = 1 - q - rate_in + rate_out;
    const Rational disc = lin * lin + 4 * rate_in * rate_out;
    Float root(0, bits);
    mpf_sqrt(root.get_mpf_t(), to_float(disc, bits).get_mpf_t());
    Float two_rate = to_float(2 * rate_in, bits);
    Float linf = to_float(lin, bits);
    Float plus(0, bits), minus(0, bits);
    plus = (linf + root) / two_rate;
    minus = (linf - root) / two_rate;
    return {plus, minus};
}

inline std::optional<Rational> exact_sqrt(const Rational& x)
{
    if (x < 0) return std::nullopt;
    Integer n = x.get_num(), d = x.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return make_rational(rn, rd);
}

}  // namespace detail

/// Forward map with the + root for a, b and the - root for c, d.
inline ApproxAWParams to_aw(const HoppingRates& r, unsigned bits = precision_bits())
{
    if (!r.is_valid()) throw InvalidParams("to_aw: rates outside the physical region");
    auto [a, c] = detail::roots_float(r.alpha, r.gamma, r.q, bits);
    auto [b, d] = detail::roots_float(r.beta, r.delta, r.q, bits);
    return ApproxAWParams{a, b, c, d, to_float(r.q, bits)};
}

/// Forward map in exact arithmetic; nullopt when a discriminant is not a rational square.
inline std::optional<AWParams> to_aw_exact(const HoppingRates& r)
{
    if (!r.is_valid()) throw InvalidParams("to_aw_exact: rates outside the physical region");
    auto side = [&](const Rational& in, const Rational& out) -> std::optional<std::pair<Rational, Rational>> {
        const Rational lin = 1 - r.q - in + out;
        auto root = detail::exact_sqrt(lin * lin + 4 * in * out);
        if (!root) return std::nullopt;
        return std::pair<Rational, Rational>{(lin + *root) / (2 * in), (lin - *root) / (2 * in)};
    };
    auto ac = side(r.alpha, r.gamma);
    auto bd = side(r.beta, r.delta);
    if (!ac || !bd) return std::nullopt;
    return AWParams::make(ac->first, bd->first, ac->second, bd->second, r.q);
}

// Key-value serialization ----------------------------------------------------

inline KeyValueMap to_key_values(const AWParams& p)
{
    return {{"a", to_string(p.a)}, {"b", to_string(p.b)}, {"c", to_string(p.c)},
            {"d", to_string(p.d)}, {"q", to_string(p.q)}};
}

inline KeyValueMap to_key_values(const HoppingRates& r)
{
    return {{"alpha", to_string(r.alpha)}, {"beta", to_string(r.beta)}, {"gamma", to_string(r.gamma)},
            {"delta", to_string(r.delta)}, {"q", to_string(r.q)}};
}

namespace detail {
inline Rational require_key(const KeyValueMap& kv, const std::string& key)
{
    auto it = kv.find(key);
    if (it == kv.end()) throw ParseError("missing key '" + key + "'");
    return parse_rational(it->second);
}
}  // namespace detail

inline AWParams aw_params_from_key_values(const KeyValueMap& kv)
{
    using detail::require_key;
    return AWParams::make(require_key(kv, "a"), require_key(kv, "b"), require_key(kv, "c"),
                          require_key(kv, "d"), require_key(kv, "q"));
}

inline HoppingRates rates_from_key_values(const KeyValueMap& kv)
{
    using detail::require_key;
    HoppingRates r{require_key(kv, "alpha"), require_key(kv, "beta"), require_key(kv, "gamma"),
                   require_key(kv, "delta"), require_key(kv, "q")};
    if (!r.is_valid()) throw InvalidParams("hopping rates outside the physical region");
    return r;
}

inline std::string describe(const AWParams& p)
{
    return "(a,b,c,d,q)=(" + to_string(p.a) + "," + to_string(p.b) + "," + to_string(p.c) + "," +
           to_string(p.d) + "," + to_string(p.q) + ")";
}

}  // namespace biorth
