#pragma once

// Bimoment matrix B_{i,j} = L(d^i e^j).
//
// Entries come from two partial q-difference recurrences in the interior
//
//   (erec)  B_{i,j} = (1-q^i) B_{i-1,j-1} + (a+c) q^i B_{i,j-1} - ac q^i B_{i+1,j-1}
//   (drec)  B_{i,j} = (1-q^j) B_{i-1,j-1} + (b+d) q^j B_{i-1,j} - bd q^j B_{i-1,j+1}
//
// seeded by second-order recurrences along the first column and first row.
// Either interior recurrence reaches one step outside the block, so values are
// stored on the triangle i + j <= depth and filled one anti-diagonal at a time;
// an (n+1) x (n+1) block needs depth 2n.

#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <sstream>
#include <vector>

#include "biorth/coefficients.hpp"
#include "biorth/matrix.hpp"
#include "biorth/report.hpp"

namespace biorth {

enum class FillOrder {
    erec_columns,  ///< interior from (erec): column j from column j-1
    drec_rows,     ///< interior from (drec): row i from row i-1
};

namespace detail {

// One step of the boundary recurrence. For the column: (x, y, u, v) = (b, d, a, c).
inline Rational boundary_step(const AWParams& p, const Rational& x, const Rational& y, const Rational& u,
                              const Rational& v, long i, const Rational& prev1, const Rational& prev2)
{
    const Rational qi1 = qpow(p.q, i - 1);
    const Rational den = 1 - p.abcd() * qi1;
    if (den == 0) throw SingularParams("boundary recurrence: 1 - abcd q^" + std::to_string(i - 1) + " = 0");
    const Rational xy = x * y;
    return ((x + y - xy * (u + v) * qi1) * prev1 - xy * (1 - qi1) * prev2) / den;
}

inline std::vector<Rational> boundary_sequence(const AWParams& p, long depth, bool column)
{
    std::vector<Rational> out;
    out.reserve(static_cast<size_t>(depth) + 1);
    out.emplace_back(1);
    for (long i = 1; i <= depth; ++i) {
        const Rational prev2 = i >= 2 ? out[static_cast<size_t>(i - 2)] : Rational(0);
        const Rational& prev1 = out[static_cast<size_t>(i - 1)];
        out.push_back(column ? boundary_step(p, p.b, p.d, p.a, p.c, i, prev1, prev2)
                             : boundary_step(p, p.a, p.c, p.b, p.d, i, prev1, prev2));
    }
    return out;
}

}  // namespace detail

/// B_{0,0}, ..., B_{depth,0}.
inline std::vector<Rational> boundary_column(const AWParams& p, long depth)
{
    return detail::boundary_sequence(p, depth, true);
}

/// B_{0,0}, ..., B_{0,depth}.
inline std::vector<Rational> boundary_row(const AWParams& p, long depth)
{
    return detail::boundary_sequence(p, depth, false);
}

/// Right-hand side of (erec) at (i, j), reading neighbours through `at`.
template <typename Lookup>
Rational erec_value(const AWParams& p, long i, long j, Lookup&& at)
{
    const Rational qi = qpow(p.q, i);
    return (1 - qi) * at(i - 1, j - 1) + (p.a + p.c) * qi * at(i, j - 1) - p.a * p.c * qi * at(i + 1, j - 1);
}

/// Right-hand side of (drec) at (i, j).
template <typename Lookup>
Rational drec_value(const AWParams& p, long i, long j, Lookup&& at)
{
    const Rational qj = qpow(p.q, j);
    return (1 - qj) * at(i - 1, j - 1) + (p.b + p.d) * qj * at(i - 1, j) - p.b * p.d * qj * at(i - 1, j + 1);
}

/// Growable store of B_{i,j} on the triangle i + j <= depth.
class BimomentTriangle {
public:
    explicit BimomentTriangle(AWParams p, FillOrder order = FillOrder::erec_columns)
        : params_(std::move(p)), order_(order)
    {
        rows_.push_back({Rational(1)});
        column_ = {Rational(1)};
        row_ = {Rational(1)};
    }

    const AWParams& params() const { return params_; }
    FillOrder fill_order() const { return order_; }
    long depth() const { return depth_; }

    /// Extends the triangle so every i + j <= depth is available.
    void extend(long depth)
    {
        if (depth <= depth_) return;
        for (long s = depth_ + 1; s <= depth; ++s) {
            column_.push_back(detail::boundary_step(params_, params_.b, params_.d, params_.a, params_.c, s,
                                                    column_[static_cast<size_t>(s - 1)],
                                                    s >= 2 ? column_[static_cast<size_t>(s - 2)] : Rational(0)));
            row_.push_back(detail::boundary_step(params_, params_.a, params_.c, params_.b, params_.d, s,
                                                 row_[static_cast<size_t>(s - 1)],
                                                 s >= 2 ? row_[static_cast<size_t>(s - 2)] : Rational(0)));
            rows_.emplace_back();
            for (long i = 0; i <= s; ++i) rows_[static_cast<size_t>(i)].emplace_back();
            set(s, 0, column_[static_cast<size_t>(s)]);
            set(0, s, row_[static_cast<size_t>(s)]);
            auto at = [this](long i, long j) -> const Rational& { return get(i, j); };
            if (order_ == FillOrder::erec_columns) {
                for (long j = 1; j < s; ++j) set(s - j, j, erec_value(params_, s - j, j, at));
            } else {
                for (long i = 1; i < s; ++i) set(i, s - i, drec_value(params_, i, s - i, at));
            }
            depth_ = s;
        }
    }

    /// B_{i,j}; requires i + j <= depth().
    const Rational& at(long i, long j) const
    {
        if (i < 0 || j < 0 || i + j > depth_) throw std::out_of_range("bimoment entry outside stored triangle");
        return get(i, j);
    }

    /// (n+1) x (n+1) block, extending the triangle as needed.
    Matrix<Rational> block(long n)
    {
        extend(2 * n);
        Matrix<Rational> m(static_cast<size_t>(n + 1), static_cast<size_t>(n + 1));
        for (long i = 0; i <= n; ++i)
            for (long j = 0; j <= n; ++j) m(static_cast<size_t>(i), static_cast<size_t>(j)) = get(i, j);
        return m;
    }

private:
    const Rational& get(long i, long j) const { return rows_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    void set(long i, long j, Rational v) { rows_[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(v); }

    AWParams params_;
    FillOrder order_;
    long depth_ = 0;
    std::vector<std::vector<Rational>> rows_;  // rows_[i] holds B_{i,0..depth-i}
    std::vector<Rational> column_, row_;
};

/// Thread-safe wrapper: concurrent readers, exclusive extension.
class BimomentCache {
public:
    explicit BimomentCache(AWParams p) : triangle_(std::move(p)) {}

    const AWParams& params() const { return triangle_.params(); }

    void ensure(long depth)
    {
        {
            std::shared_lock lock(mutex_);
            if (triangle_.depth() >= depth) return;
        }
        std::unique_lock lock(mutex_);
        triangle_.extend(depth);
    }

    Rational value(long i, long j)
    {
        ensure(i + j);
        std::shared_lock lock(mutex_);
        return triangle_.at(i, j);
    }

private:
    std::shared_mutex mutex_;
    BimomentTriangle triangle_;
};

struct BimomentMatrix {
    AWParams params;
    long order = 0;
    Matrix<Rational> entries;

    const Rational& operator()(long i, long j) const
    {
        return entries(static_cast<size_t>(i), static_cast<size_t>(j));
    }
};

inline BimomentMatrix bimoment_block(const AWParams& p, long n, FillOrder order = FillOrder::erec_columns)
{
    BimomentTriangle t(p, order);
    return BimomentMatrix{p, n, t.block(n)};
}

/// Checks that every entry of the depth-2n triangle satisfies both interior
/// recurrences, that the boundaries satisfy their own recurrences, and that
/// the (erec) and (drec) fills agree on the (n+1) x (n+1) block.
inline VerificationReport verify_bimoment_recurrences(const AWParams& p, long n)
{
    VerificationReport rep;
    rep.suite = "bimoment";
    rep.params = to_key_values(p);
    rep.n = n;
    Stopwatch sw;

    BimomentTriangle by_e(p, FillOrder::erec_columns), by_d(p, FillOrder::drec_rows);
    by_e.extend(2 * n);
    by_d.extend(2 * n);
    auto at = [&](long i, long j) -> const Rational& { return by_e.at(i, j); };

    auto check_recurrence = [&](const char* name, auto&& rhs) {
        for (long s = 2; s <= 2 * n; ++s)
            for (long i = 1; i < s; ++i) {
                const long j = s - i;
                Rational expected = rhs(i, j);
                if (expected != by_e.at(i, j)) {
                    rep.fail(name, Counterexample{{i, j}, to_string(expected), to_string(by_e.at(i, j)), ""});
                    return;
                }
            }
        rep.pass(name);
    };
    check_recurrence("erec_holds", [&](long i, long j) { return erec_value(p, i, j, at); });
    check_recurrence("drec_holds", [&](long i, long j) { return drec_value(p, i, j, at); });

    Matrix<Rational> be = by_e.block(n), bd = by_d.block(n);
    auto mm = first_mismatch(be, bd);
    if (mm)
        rep.fail("erec_fill_equals_drec_fill",
                 Counterexample{{long(mm->first), long(mm->second)}, to_string(be(mm->first, mm->second)),
                                to_string(bd(mm->first, mm->second)), ""});
    else
        rep.pass("erec_fill_equals_drec_fill");
    rep.record("origin_is_one", be(0, 0) == 1);
    rep.timings_ms["total"] = sw.elapsed_ms();
    return rep;
}

enum class TransposeSwap { ab_cd, ad_bc };

/// B(p)^T == B(swapped p) on the (n+1) x (n+1) block.
inline bool check_transpose_symmetry(const AWParams& p, long n, TransposeSwap swap = TransposeSwap::ab_cd)
{
    const AWParams other = swap == TransposeSwap::ab_cd ? p.swap_ab_cd() : p.swap_ad_bc();
    return bimoment_block(p, n).entries.transposed() == bimoment_block(other, n).entries;
}

// Export ---------------------------------------------------------------------

/// Row-major CSV of exact "p/q" strings, one matrix row per line.
inline void write_csv(std::ostream& os, const Matrix<Rational>& m)
{
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ',';
            os << to_string(m(i, j));
        }
        os << '\n';
    }
}

inline nlohmann::ordered_json matrix_to_json(const Matrix<Rational>& m)
{
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline nlohmann::ordered_json to_json(const BimomentMatrix& b)
{
    nlohmann::ordered_json j;
    j["params"] = to_key_values(b.params);
    j["n"] = b.order;
    j["entries"] = matrix_to_json(b.entries);
    return j;
}

}  // namespace biorth
