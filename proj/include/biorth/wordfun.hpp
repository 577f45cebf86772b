#pragma once

// Words over {d, e}, their formal linear combinations, and the linear
// functional L defined by
//
//   L(u (de - q ed - q') v) = 0,
//   L(u (d + bd e - (b+d))) = 0,
//   L((e + ac d - (a+c)) v) = 0,   L(1) = 1.
//
// Two evaluation paths are provided. The primary one normal-orders with the
// leftmost "ed" -> q^{-1}(de - q') rewrite and reads B_{n,m}. The second one
// never touches the interior of B: it drives letters to a boundary and
// eliminates them there until only a pure power d^k (or e^k) remains, whose
// value comes from the boundary recurrence alone.

#include <algorithm>
#include <map>
#include <random>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>

#include "biorth/bimoment.hpp"

namespace biorth {

/// A finite word over {d, e}; the empty word is the ring unit.
struct Word {
    std::string letters;

    Word() = default;
    explicit Word(std::string s) : letters(std::move(s))
    {
        for (char ch : letters)
            if (ch != 'd' && ch != 'e') throw ParseError("word letters must be 'd' or 'e': '" + letters + "'");
    }

    static Word parse(std::string_view s) { return Word(std::string(s)); }
    static Word monomial(long n, long m) { return Word(std::string(size_t(n), 'd') + std::string(size_t(m), 'e')); }

    size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }

    /// d^n e^m form (all d-letters precede all e-letters).
    bool is_normal_ordered() const { return letters.find("ed") == std::string::npos; }
    long count(char letter) const { return static_cast<long>(std::count(letters.begin(), letters.end(), letter)); }

    friend Word operator+(const Word& x, const Word& y) { return Word{x.letters + y.letters}; }
    friend auto operator<=>(const Word&, const Word&) = default;
};

/// Finite map Word -> coefficient with no stored zeros.
class WordPoly {
public:
    using Terms = std::map<std::string, Rational>;

    WordPoly() = default;
    WordPoly(const Word& w, Rational c = 1) { add(w.letters, c); }

    static WordPoly unit() { return WordPoly(Word{}); }
    static WordPoly scalar(const Rational& c) { return WordPoly(Word{}, c); }
    static WordPoly letter(char ch, Rational c = 1) { return WordPoly(Word(std::string(1, ch)), std::move(c)); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    void add(const std::string& w, const Rational& c)
    {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    WordPoly& operator+=(const WordPoly& o)
    {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    WordPoly& operator-=(const WordPoly& o)
    {
        for (const auto& [w, c] : o.terms_) add(w, -c);
        return *this;
    }
    WordPoly& operator*=(const Rational& s)
    {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [w, c] : terms_) c *= s;
        return *this;
    }

    friend WordPoly operator+(WordPoly x, const WordPoly& y) { return x += y; }
    friend WordPoly operator-(WordPoly x, const WordPoly& y) { return x -= y; }
    friend WordPoly operator*(WordPoly x, const Rational& s) { return x *= s; }
    friend WordPoly operator*(const Rational& s, WordPoly x) { return x *= s; }

    /// Concatenation product, extended bilinearly.
    friend WordPoly operator*(const WordPoly& x, const WordPoly& y)
    {
        WordPoly out;
        for (const auto& [wx, cx] : x.terms_)
            for (const auto& [wy, cy] : y.terms_) out.add(wx + wy, cx * cy);
        return out;
    }

    friend bool operator==(const WordPoly&, const WordPoly&) = default;

private:
    Terms terms_;
};

inline nlohmann::ordered_json to_json(const WordPoly& wp)
{
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& [w, c] : wp.terms()) list.push_back({{"word", w}, {"coeff", to_string(c)}});
    return list;
}

inline WordPoly word_poly_from_json(const nlohmann::json& j)
{
    WordPoly wp;
    for (const auto& item : j) wp += WordPoly(Word(item.at("word").get<std::string>()), parse_rational(item.at("coeff").get<std::string>()));
    return wp;
}

// Normal ordering -------------------------------------------------------------

/// Memoizing normal-order engine for a fixed q.
class NormalOrderer {
public:
    explicit NormalOrderer(Rational q) : q_(std::move(q))
    {
        if (q_ == 0) throw UnsupportedQ("normal ordering needs q != 0");
        qinv_ = 1 / q_;
        shift_ = (1 - q_) / q_;
    }

    /// Normal form of a single word; leftmost "ed" rewritten first.
    const WordPoly& word(const std::string& w)
    {
        if (auto it = memo_.find(w); it != memo_.end()) return it->second;
        WordPoly out;
        const size_t k = w.find("ed");
        if (k == std::string::npos) {
            out.add(w, 1);
        } else {
            std::string swapped = w;
            swapped[k] = 'd';
            swapped[k + 1] = 'e';
            std::string dropped = w.substr(0, k) + w.substr(k + 2);
            out += word(swapped) * qinv_;
            out -= word(dropped) * shift_;
        }
        return memo_.emplace(w, std::move(out)).first->second;
    }

    WordPoly operator()(const WordPoly& wp)
    {
        WordPoly out;
        for (const auto& [w, c] : wp.terms()) out += word(w) * c;
        return out;
    }

private:
    Rational q_, qinv_, shift_;
    std::unordered_map<std::string, WordPoly> memo_;
};

inline WordPoly normal_order(const WordPoly& wp, const Rational& q)
{
    NormalOrderer no(q);
    return no(wp);
}

// The functional ------------------------------------------------------------------

/// L bound to one parameter set. Safe for concurrent use: the bimoment cache
/// and the normal-form memo sit behind reader/writer locks.
class LinearFunctional {
public:
    explicit LinearFunctional(AWParams p) : params_(p), bimoment_(p), orderer_(p.q)
    {
        if (p.q == 0 || p.q == 1) throw UnsupportedQ("the functional needs q not in {0, 1}");
    }

    const AWParams& params() const { return params_; }

    Rational bimoment(long n, long m) { return bimoment_.value(n, m); }

    WordPoly normal_form(const std::string& w)
    {
        {
            std::shared_lock lock(memo_mutex_);
            if (auto it = forms_.find(w); it != forms_.end()) return it->second;
        }
        std::unique_lock lock(memo_mutex_);
        WordPoly f = orderer_.word(w);
        forms_.emplace(w, f);
        return f;
    }

    Rational word(const std::string& w)
    {
        bimoment_.ensure(static_cast<long>(w.size()));
        Rational total = 0;
        const WordPoly form = normal_form(w);
        for (const auto& [nw, c] : form.terms()) {
            const long n = static_cast<long>(std::count(nw.begin(), nw.end(), 'd'));
            total += c * bimoment_.value(n, static_cast<long>(nw.size()) - n);
        }
        return total;
    }

    Rational operator()(const WordPoly& wp)
    {
        Rational total = 0;
        for (const auto& [w, c] : wp.terms()) total += c * word(w);
        return total;
    }

private:
    AWParams params_;
    BimomentCache bimoment_;
    std::shared_mutex memo_mutex_;
    NormalOrderer orderer_;
    std::unordered_map<std::string, WordPoly> forms_;
};

inline Rational functional(const WordPoly& wp, const AWParams& p)
{
    LinearFunctional L(p);
    return L(wp);
}

// Boundary eliminations ---------------------------------------------------------

/// e w -> (a+c) w - ac d w. Every word must begin with e.
inline WordPoly eliminate_left_e(const WordPoly& wp, const AWParams& p)
{
    WordPoly out;
    for (const auto& [w, c] : wp.terms()) {
        if (w.empty() || w.front() != 'e') throw ShapeError("eliminate_left_e: word '" + w + "' does not begin with e");
        const std::string rest = w.substr(1);
        out.add(rest, c * (p.a + p.c));
        out.add("d" + rest, -c * p.a * p.c);
    }
    return out;
}

/// w d -> (b+d) w - bd w e. Every word must end with d.
inline WordPoly eliminate_right_d(const WordPoly& wp, const AWParams& p)
{
    WordPoly out;
    for (const auto& [w, c] : wp.terms()) {
        if (w.empty() || w.back() != 'd') throw ShapeError("eliminate_right_d: word '" + w + "' does not end with d");
        const std::string rest = w.substr(0, w.size() - 1);
        out.add(rest, c * (p.b + p.d));
        out.add(rest + "e", -c * p.b * p.d);
    }
    return out;
}

enum class EliminationSide { left, right };

/// Evaluates L without normal ordering or the interior of B.
///
/// Left side: the first e in d^k e r is moved to the front with
/// d^k e = q^k e d^k + (1-q^k) d^{k-1} and then eliminated, which lowers the
/// e-count of every resulting word; pure d^k is read from the boundary column.
/// The right side mirrors this with d e^k = q^k e^k d + (1-q^k) e^{k-1}.
class EliminationEvaluator {
public:
    EliminationEvaluator(AWParams p, EliminationSide side) : params_(std::move(p)), side_(side) {}

    Rational word(const std::string& w)
    {
        if (auto it = memo_.find(w); it != memo_.end()) return it->second;
        Rational value = side_ == EliminationSide::left ? left(w) : right(w);
        memo_.emplace(w, value);
        return value;
    }

    Rational operator()(const WordPoly& wp)
    {
        Rational total = 0;
        for (const auto& [w, c] : wp.terms()) total += c * word(w);
        return total;
    }

private:
    const Rational& boundary(long k, bool column)
    {
        auto& seq = column ? column_ : row_;
        if (static_cast<long>(seq.size()) <= k) seq = column ? boundary_column(params_, k) : boundary_row(params_, k);
        return seq[static_cast<size_t>(k)];
    }

    Rational left(const std::string& w)
    {
        const size_t k = w.find('e');
        if (k == std::string::npos) return boundary(static_cast<long>(w.size()), true);
        const std::string r = w.substr(k + 1);
        const std::string dk(k, 'd');
        // d^k e r = q^k (e d^k r) + (1 - q^k) d^{k-1} r
        WordPoly expanded;
        if (k == 0) {
            expanded = eliminate_left_e(WordPoly(Word(w)), params_);
        } else {
            const Rational qk = qpow(params_.q, static_cast<long>(k));
            expanded = eliminate_left_e(WordPoly(Word("e" + dk + r)), params_) * qk;
            expanded.add(std::string(k - 1, 'd') + r, 1 - qk);
        }
        return (*this)(expanded);
    }

    Rational right(const std::string& w)
    {
        const size_t pos = w.rfind('d');
        if (pos == std::string::npos) return boundary(static_cast<long>(w.size()), false);
        const size_t k = w.size() - pos - 1;  // e-letters after the last d
        const std::string u = w.substr(0, pos);
        const std::string ek(k, 'e');
        // u d e^k = q^k (u e^k d) + (1 - q^k) u e^{k-1}
        WordPoly expanded;
        if (k == 0) {
            expanded = eliminate_right_d(WordPoly(Word(w)), params_);
        } else {
            const Rational qk = qpow(params_.q, static_cast<long>(k));
            expanded = eliminate_right_d(WordPoly(Word(u + ek + "d")), params_) * qk;
            expanded.add(u + std::string(k - 1, 'e'), 1 - qk);
        }
        return (*this)(expanded);
    }

    AWParams params_;
    EliminationSide side_;
    std::unordered_map<std::string, Rational> memo_;
    std::vector<Rational> column_, row_;
};

// Verification -------------------------------------------------------------------

namespace detail {
inline std::string random_word(std::mt19937_64& rng, size_t max_len)
{
    std::uniform_int_distribution<size_t> len(0, max_len);
    std::bernoulli_distribution coin(0.5);
    std::string w(len(rng), 'd');
    for (auto& ch : w) ch = coin(rng) ? 'd' : 'e';
    return w;
}
}  // namespace detail

/// Random instances of the three defining relations must evaluate to exactly 0.
/// Prefix and suffix lengths are drawn so the full word length stays <= max_len.
inline VerificationReport check_defining_relations(const AWParams& p, size_t max_len, int trials,
                                                   std::uint64_t seed = 20170101)
{
    VerificationReport rep;
    rep.suite = "functional";
    rep.params = to_key_values(p);
    rep.n = static_cast<long>(max_len);
    Stopwatch sw;
    if (max_len < 2) throw std::invalid_argument("check_defining_relations: max_len must be >= 2");

    LinearFunctional L(p);
    std::mt19937_64 rng(seed);
    const WordPoly d = WordPoly::letter('d'), e = WordPoly::letter('e');
    const WordPoly quad = d * e - e * d * p.q - WordPoly::scalar(p.qprime());
    const WordPoly vrel = d + e * (p.b * p.d) - WordPoly::scalar(p.b + p.d);
    const WordPoly wrel = e + d * (p.a * p.c) - WordPoly::scalar(p.a + p.c);

    auto run = [&](const std::string& name, auto&& make) {
        for (int t = 0; t < trials; ++t) {
            auto [label, element] = make();
            const Rational value = L(element);
            if (value != 0) {
                rep.fail(name, Counterexample{{t}, "0", to_string(value), label});
                return;
            }
        }
        rep.pass(name);
    };
    run("quadratic_relation", [&] {
        std::string u = detail::random_word(rng, max_len - 2);
        std::string v = detail::random_word(rng, max_len - 2 - u.size());
        return std::pair{"u=" + u + " v=" + v, WordPoly(Word(u)) * quad * WordPoly(Word(v))};
    });
    run("V_boundary_relation", [&] {
        std::string u = detail::random_word(rng, max_len - 1);
        return std::pair{"u=" + u, WordPoly(Word(u)) * vrel};
    });
    run("W_boundary_relation", [&] {
        std::string v = detail::random_word(rng, max_len - 1);
        return std::pair{"v=" + v, wrel * WordPoly(Word(v))};
    });
    rep.timings_ms["total"] = sw.elapsed_ms();
    return rep;
}

/// Normal-order evaluation agrees with both elimination paths on every word of
/// length <= max_len.
inline VerificationReport check_evaluation_paths(const AWParams& p, size_t max_len)
{
    VerificationReport rep;
    rep.suite = "evaluation_paths";
    rep.params = to_key_values(p);
    rep.n = static_cast<long>(max_len);
    LinearFunctional L(p);
    EliminationEvaluator left(p, EliminationSide::left), right(p, EliminationSide::right);
    bool ok_left = true, ok_right = true;
    for (size_t len = 0; len <= max_len; ++len)
        for (unsigned long bits = 0; bits < (1ul << len); ++bits) {
            std::string w(len, 'd');
            for (size_t i = 0; i < len; ++i) w[i] = (bits >> (len - 1 - i)) & 1 ? 'e' : 'd';
            const Rational v = L.word(w);
            if (ok_left && left.word(w) != v) {
                rep.fail("normal_order_vs_left_elimination", Counterexample{{long(len)}, to_string(v), to_string(left.word(w)), w});
                ok_left = false;
            }
            if (ok_right && right.word(w) != v) {
                rep.fail("normal_order_vs_right_elimination", Counterexample{{long(len)}, to_string(v), to_string(right.word(w)), w});
                ok_right = false;
            }
        }
    if (ok_left) rep.pass("normal_order_vs_left_elimination");
    if (ok_right) rep.pass("normal_order_vs_right_elimination");
    return rep;
}

}  // namespace biorth
