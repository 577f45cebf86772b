#pragma once

// Open-boundary ASEP on L sites: matrix-product weights through the word
// functional, and an exact master-equation oracle to compare them against.
//
// States are indexed big-endian: site 1 is the most significant bit.

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "biorth/parallel.hpp"
#include "biorth/wordfun.hpp"

namespace biorth {

struct Configuration {
    int length = 0;
    unsigned long bits = 0;

    Configuration(int L, unsigned long b) : length(L), bits(b)
    {
        if (L < 1 || L > 63) throw std::invalid_argument("configuration length must be in [1, 63]");
        if (b >> L) throw std::invalid_argument("configuration bits exceed length");
    }

    static Configuration parse(std::string_view s)
    {
        unsigned long b = 0;
        for (char c : s) {
            if (c != '0' && c != '1') throw ParseError("configuration must be a 0/1 string");
            b = (b << 1) | unsigned(c - '0');
        }
        return Configuration(int(s.size()), b);
    }

    /// tau_i for i = 1..L.
    bool occupied(int i) const { return (bits >> (length - i)) & 1UL; }

    std::string str() const
    {
        std::string s;
        for (int i = 1; i <= length; ++i) s += occupied(i) ? '1' : '0';
        return s;
    }

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

enum class AnsatzVariant {
    shifted,    ///< letters d, e used directly
    unshifted,  ///< letters D = (1 + d)/q', E = (1 + e)/q'
};

inline const char* to_string(AnsatzVariant v) { return v == AnsatzVariant::shifted ? "shifted" : "unshifted"; }

inline AnsatzVariant parse_variant(std::string_view s)
{
    if (s == "shifted") return AnsatzVariant::shifted;
    if (s == "unshifted") return AnsatzVariant::unshifted;
    throw ParseError("unknown variant '" + std::string(s) + "'");
}

struct StationaryDistribution {
    int L = 0;
    std::vector<Rational> probabilities;  // indexed by Configuration::bits
    Rational Z = 1;

    const Rational& operator[](const Configuration& c) const { return probabilities[c.bits]; }

    Rational total() const
    {
        Rational s = 0;
        for (const auto& x : probabilities) s += x;
        return s;
    }
};

/// The letter standing for an occupied (particle) or empty site.
inline WordPoly ansatz_letter(bool particle, AnsatzVariant v, const Rational& q)
{
    const char ch = particle ? 'd' : 'e';
    if (v == AnsatzVariant::shifted) return WordPoly::letter(ch);
    WordPoly w = WordPoly::unit() + WordPoly::letter(ch);
    w *= Rational(1 / (1 - q));
    return w;
}

inline WordPoly ansatz_word(const Configuration& tau, AnsatzVariant v, const Rational& q)
{
    WordPoly w = WordPoly::unit();
    for (int i = 1; i <= tau.length; ++i) w = w * ansatz_letter(tau.occupied(i), v, q);
    return w;
}

inline Rational ansatz_weight(const Configuration& tau, LinearFunctional& L, AnsatzVariant v)
{
    return L(ansatz_word(tau, v, L.params().q));
}

inline Rational ansatz_weight(const Configuration& tau, const AWParams& p, AnsatzVariant v)
{
    LinearFunctional L(p);
    return ansatz_weight(tau, L, v);
}

inline constexpr int kAnsatzMaxLength = 10;
inline constexpr int kGeneratorMaxLength = 12;
inline constexpr int kOracleMaxLength = 10;

/// Normalized weights. Also checks Z against L applied to the expanded L-th
/// power of the summed letter; a mismatch throws.
inline StationaryDistribution stationary_ansatz(int L, const AWParams& p, AnsatzVariant v)
{
    if (L < 1) throw std::invalid_argument("L must be positive");
    if (L > kAnsatzMaxLength) throw SizeLimit("stationary_ansatz limited to L <= 10");
    validate(p, L);
    LinearFunctional functional(p);
    const size_t states = size_t(1) << L;

    StationaryDistribution dist;
    dist.L = L;
    dist.probabilities =
        parallel_map(states, [&](size_t s) { return ansatz_weight(Configuration(L, s), functional, v); });
    Rational Z = 0;
    for (const auto& w : dist.probabilities) Z += w;

    const WordPoly sum = ansatz_letter(true, v, p.q) + ansatz_letter(false, v, p.q);
    WordPoly power = WordPoly::unit();
    for (int i = 0; i < L; ++i) power = power * sum;
    const Rational expanded = functional(power);
    if (expanded != Z)
        throw std::logic_error("normalization mismatch: sum of weights " + to_string(Z) + " vs expanded power " +
                               to_string(expanded));
    if (Z == 0) throw SingularParams("normalization Z_L vanishes");
    dist.Z = Z;
    for (auto& x : dist.probabilities) x /= Z;
    return dist;
}

// Oracle --------------------------------------------------------------------------

struct RateMatrix {
    int L = 0;
    /// rows[s] lists (target, rate) for s -> target, target != s, rates summed.
    std::vector<std::vector<std::pair<size_t, Rational>>> rows;
    std::vector<Rational> diagonal;

    size_t size() const { return rows.size(); }

    Rational operator()(size_t from, size_t to) const
    {
        if (from == to) return diagonal[from];
        for (const auto& [t, r] : rows[from])
            if (t == to) return r;
        return 0;
    }
};

inline RateMatrix generator(int L, const HoppingRates& r)
{
    if (L < 1) throw std::invalid_argument("L must be positive");
    if (L > kGeneratorMaxLength) throw SizeLimit("generator limited to L <= 12");
    RateMatrix M;
    M.L = L;
    const size_t states = size_t(1) << L;
    M.rows.resize(states);
    M.diagonal.assign(states, Rational(0));
    auto add = [&](size_t from, size_t to, const Rational& rate) {
        if (rate == 0) return;
        auto& row = M.rows[from];
        auto it = std::find_if(row.begin(), row.end(), [&](const auto& e) { return e.first == to; });
        if (it == row.end())
            row.emplace_back(to, rate);
        else
            it->second += rate;
        M.diagonal[from] -= rate;
    };
    auto bit = [&](int i) { return size_t(1) << (L - i); };  // site i, 1-based
    for (size_t s = 0; s < states; ++s) {
        const bool first = s & bit(1), last = s & bit(L);
        add(s, s ^ bit(1), first ? r.gamma : r.alpha);
        add(s, s ^ bit(L), last ? r.beta : r.delta);
        for (int i = 1; i < L; ++i) {
            const bool left = s & bit(i), right = s & bit(i + 1);
            if (left && !right) add(s, s ^ bit(i) ^ bit(i + 1), Rational(1));
            if (!left && right) add(s, s ^ bit(i) ^ bit(i + 1), r.q);
        }
    }
    for (auto& row : M.rows) std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return M;
}

/// pi M = 0, sum pi = 1, by fraction-free elimination of M^T.
inline StationaryDistribution stationary_exact(int L, const HoppingRates& r)
{
    if (L > kOracleMaxLength) throw SizeLimit("stationary_exact limited to L <= 10");
    const RateMatrix M = generator(L, r);
    const size_t n = M.size();
    Matrix<Rational> T(n, n, Rational(0));
    for (size_t s = 0; s < n; ++s) {
        T(s, s) = M.diagonal[s];
        for (const auto& [t, rate] : M.rows[s]) T(t, s) = rate;
    }
    auto v = one_dimensional_null_vector(T);
    if (!v) throw NotIrreducible("stationary state is not unique (null space of the generator is not one-dimensional)");
    Rational sum = 0;
    for (const auto& x : *v) sum += x;
    StationaryDistribution d;
    d.L = L;
    d.Z = 1;
    for (auto& x : *v) d.probabilities.push_back(x / sum);
    return d;
}

/// Largest |(pi M)_t| over all states; zero for a stationary vector.
inline Rational balance_residual(const RateMatrix& M, const StationaryDistribution& d)
{
    std::vector<Rational> flow(M.size(), Rational(0));
    for (size_t s = 0; s < M.size(); ++s) {
        flow[s] += d.probabilities[s] * M.diagonal[s];
        for (const auto& [t, rate] : M.rows[s]) flow[t] += d.probabilities[s] * rate;
    }
    Rational worst = 0;
    for (const auto& f : flow)
        if (abs(f) > worst) worst = abs(f);
    return worst;
}

// Comparison ----------------------------------------------------------------------

struct VariantResult {
    AnsatzVariant variant;
    bool matches_oracle = false;
    Rational max_abs_discrepancy;
    StationaryDistribution distribution;
};

struct ComparisonReport {
    AWParams params;
    HoppingRates rates;
    int L = 0;
    std::vector<VariantResult> variants;
    StationaryDistribution oracle;

    std::vector<AnsatzVariant> matching() const
    {
        std::vector<AnsatzVariant> out;
        for (const auto& v : variants)
            if (v.matches_oracle) out.push_back(v.variant);
        return out;
    }
};

inline constexpr int kCompareMaxLength = 6;

inline ComparisonReport compare(int L, const AWParams& p,
                                std::vector<AnsatzVariant> which = {AnsatzVariant::shifted, AnsatzVariant::unshifted})
{
    if (L > kCompareMaxLength) throw SizeLimit("compare limited to L <= 6");
    ComparisonReport rep{p, to_rates(p), L, {}, {}};
    rep.oracle = stationary_exact(L, rep.rates);
    for (AnsatzVariant v : which) {
        VariantResult vr{v, true, Rational(0), stationary_ansatz(L, p, v)};
        for (size_t s = 0; s < rep.oracle.probabilities.size(); ++s) {
            const Rational diff = abs(Rational(vr.distribution.probabilities[s] - rep.oracle.probabilities[s]));
            if (diff > vr.max_abs_discrepancy) vr.max_abs_discrepancy = diff;
        }
        vr.matches_oracle = vr.max_abs_discrepancy == 0;
        rep.variants.push_back(std::move(vr));
    }
    return rep;
}

/// Particle-hole conjugation combined with left-right reflection.
inline Configuration mirror(const Configuration& c)
{
    unsigned long b = 0;
    for (int i = 1; i <= c.length; ++i) b = (b << 1) | (c.occupied(c.length + 1 - i) ? 0UL : 1UL);
    return Configuration(c.length, b);
}

/// The mirrored model has rates (beta, alpha, delta, gamma); its stationary
/// state must be pi composed with the mirror map.
inline bool check_mirror_symmetry(int L, const HoppingRates& r)
{
    const HoppingRates m{r.beta, r.alpha, r.delta, r.gamma, r.q};
    const StationaryDistribution x = stationary_exact(L, r), y = stationary_exact(L, m);
    for (size_t s = 0; s < x.probabilities.size(); ++s)
        if (y.probabilities[mirror(Configuration(L, s)).bits] != x.probabilities[s]) return false;
    return true;
}

// Export --------------------------------------------------------------------------

inline void write_csv(std::ostream& os, const StationaryDistribution& d)
{
    os << "configuration,probability,decimal\n";
    for (size_t s = 0; s < d.probabilities.size(); ++s)
        os << Configuration(d.L, s).str() << ',' << to_string(d.probabilities[s]) << ','
           << to_decimal(d.probabilities[s]) << '\n';
}

inline nlohmann::ordered_json to_json(const StationaryDistribution& d)
{
    nlohmann::ordered_json probs = nlohmann::ordered_json::object();
    for (size_t s = 0; s < d.probabilities.size(); ++s) probs[Configuration(d.L, s).str()] = to_string(d.probabilities[s]);
    return probs;
}

inline nlohmann::ordered_json to_json(const ComparisonReport& r)
{
    nlohmann::ordered_json j;
    j["params"] = to_key_values(r.params);
    j["rates"] = to_key_values(r.rates);
    j["L"] = r.L;
    nlohmann::ordered_json vs = nlohmann::ordered_json::array();
    for (const auto& v : r.variants) {
        nlohmann::ordered_json vj;
        vj["name"] = to_string(v.variant);
        vj["matches_oracle"] = v.matches_oracle;
        vj["max_abs_discrepancy"] = to_string(v.max_abs_discrepancy);
        vs.push_back(std::move(vj));
    }
    j["variants"] = std::move(vs);
    j["oracle"]["probabilities"] = to_json(r.oracle);
    return j;
}

}  // namespace biorth
