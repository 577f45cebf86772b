#pragma once

// Exact scalar type and helpers shared by every module.
//
// Rational is GMP's mpq_class. It is always canonical (lowest terms, positive
// denominator) as long as values are produced by arithmetic or by
// parse_rational(); constructing from a raw numerator/denominator pair must go
// through make_rational().

#include <gmpxx.h>

#include <cstdlib>
#include <regex>
#include <string>
#include <string_view>

#include "biorth/errors.hpp"

namespace biorth {

using Rational = mpq_class;
using Integer = mpz_class;
using Float = mpf_class;

inline constexpr unsigned kDefaultPrecisionBits = 256;

inline Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) throw ParseError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p/q" or "p" with optional sign. Decimal notation is rejected.
inline Rational parse_rational(std::string_view text)
{
    static const std::regex pattern(R"(^\s*([+-]?[0-9]+)(?:/([+-]?[0-9]+))?\s*$)");
    std::string s(text);
    std::smatch m;
    if (!std::regex_match(s, m, pattern))
        throw ParseError("not a rational literal: '" + s + "'");
    Integer num(m[1].str().front() == '+' ? m[1].str().substr(1) : m[1].str(), 10);
    Integer den = 1;
    if (m[2].matched) {
        std::string d = m[2].str();
        den = Integer(d.front() == '+' ? d.substr(1) : d, 10);
    }
    return make_rational(num, den);
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

/// q^k for any integer k; q must be nonzero when k < 0.
inline Rational qpow(const Rational& q, long k)
{
    Rational base = q;
    if (k < 0) {
        if (base == 0) throw SingularParams("negative power of zero");
        base = 1 / base;
        k = -k;
    }
    Rational result = 1;
    mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(k));
    mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(k));
    result.canonicalize();
    return result;
}

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// Floating precision in bits; BIORTH_PRECISION_BITS overrides the default.
inline unsigned precision_bits()
{
    if (const char* env = std::getenv("BIORTH_PRECISION_BITS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v >= 32 && v <= 65536) return static_cast<unsigned>(v);
    }
    return kDefaultPrecisionBits;
}

inline Float to_float(const Rational& r, unsigned bits = precision_bits())
{
    Float f(0, bits);
    mpf_set_q(f.get_mpf_t(), r.get_mpq_t());
    return f;
}

/// Decimal rendering with `digits` significant digits.
inline std::string to_decimal(const Rational& r, int digits = 17)
{
    Float f = to_float(r, 192);
    int len = gmp_snprintf(nullptr, 0, "%.*Fg", digits, f.get_mpf_t());
    std::string out(static_cast<size_t>(len) + 1, '\0');
    gmp_snprintf(out.data(), out.size(), "%.*Fg", digits, f.get_mpf_t());
    out.resize(static_cast<size_t>(len));
    return out;
}

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace biorth
