#pragma once

// Command-line front end. run() is separate from main() so the tests can drive
// it with captured streams.
//
// Exit status: 0 all checks pass, 1 some check failed (report still written),
// 2 invalid configuration.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "biorth/biorth.hpp"
#include "biorth/parallel.hpp"

namespace biorth::cli {

enum ExitCode { kPass = 0, kFailedCheck = 1, kInvalidConfig = 2 };

struct ParamFlags {
    std::string a, b, c, d, q;
    std::string alpha, beta, gamma, delta;

    void attach(CLI::App* app)
    {
        app->add_option("--a", a, "boundary parameter a (rational)");
        app->add_option("--b", b, "boundary parameter b (rational)");
        app->add_option("--c", c, "boundary parameter c (rational)");
        app->add_option("--d", d, "boundary parameter d (rational)");
        app->add_option("--q", q, "bulk parameter q (rational)");
        app->add_option("--alpha", alpha, "injection rate at site 1");
        app->add_option("--beta", beta, "extraction rate at site L");
        app->add_option("--gamma", gamma, "extraction rate at site 1");
        app->add_option("--delta", delta, "injection rate at site L");
    }

    AWParams resolve() const
    {
        const bool any_aw = !a.empty() || !b.empty() || !c.empty() || !d.empty();
        const bool any_rate = !alpha.empty() || !beta.empty() || !gamma.empty() || !delta.empty();
        if (any_aw && any_rate) throw InvalidParams("give either --a --b --c --d or --alpha --beta --gamma --delta, not both");
        if (q.empty()) throw InvalidParams("--q is required");
        if (any_rate) {
            if (alpha.empty() || beta.empty() || gamma.empty() || delta.empty())
                throw InvalidParams("all of --alpha --beta --gamma --delta are required");
            const HoppingRates r{parse_rational(alpha), parse_rational(beta), parse_rational(gamma),
                                 parse_rational(delta), parse_rational(q)};
            if (!r.is_valid()) throw InvalidParams("rates must satisfy alpha, beta > 0, gamma, delta >= 0, 0 <= q < 1");
            auto p = to_aw_exact(r);
            if (!p) throw InvalidParams("these rates give irrational (a, b, c, d); pass --a --b --c --d instead");
            return AWParams::make(p->a, p->b, p->c, p->d, p->q);
        }
        if (a.empty() || b.empty() || c.empty() || d.empty()) throw InvalidParams("all of --a --b --c --d are required");
        return AWParams::make(parse_rational(a), parse_rational(b), parse_rational(c), parse_rational(d),
                              parse_rational(q));
    }
};

struct Options {
    ParamFlags params;
    long n = -1;
    int L = 4;
    std::string variant = "both";
    std::string out;
    std::string format;
    unsigned long seed = 20170101;
    int trials = 200;
    long max_len = 8;
    std::vector<std::string> ts;
    bool timings = false;
};

inline void emit(const Options& o, std::ostream& stdout_, const std::string& text)
{
    if (o.out.empty()) {
        stdout_ << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw InvalidParams("cannot open --out path '" + o.out + "'");
    f << text;
}

inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

inline void require_format(const Options& o, std::initializer_list<const char*> allowed)
{
    if (o.format.empty()) return;
    for (const char* f : allowed)
        if (o.format == f) return;
    throw InvalidParams("--format " + o.format + " is not available for this command");
}

inline long size_or(const Options& o, long fallback)
{
    if (o.n < 0) return fallback;
    return o.n;
}

// Suites ---------------------------------------------------------------------

inline VerificationReport ldu_suite(const AWParams& p, long n)
{
    validate(p, 2 * n + 1);
    VerificationReport rep = verify_ldu(p, n);
    const DeterminantRoutes det = det_bimoment(p, n);
    rep.record("det_product_equals_closed_form", det.diagonal_product == det.closed_form,
               Counterexample{{n}, to_string(det.diagonal_product), to_string(det.closed_form), ""});
    rep.record("det_product_equals_elimination", det.diagonal_product == det.elimination,
               Counterexample{{n}, to_string(det.diagonal_product), to_string(det.elimination), ""});
    return rep;
}

inline VerificationReport polys_suite(const AWParams& p, long n)
{
    validate(p, 2 * n + 1);
    VerificationReport rep;
    rep.suite = "polys";
    rep.params = to_key_values(p);
    rep.n = n;
    rep.merge(polynomial_routes_check(p, n));
    rep.merge(biorthogonality_check(p, n));
    rep.merge(monomial_expansion_check(p, n));
    for (long k = 0; k <= std::min(n, kBorderedLimit); ++k)
        rep.record("bordered_determinant_n" + std::to_string(k), bordered_determinant_check(p, k));
    return rep;
}

inline VerificationReport functional_suite(const AWParams& p, size_t max_len, int trials, unsigned long seed)
{
    validate(p, long(max_len) + 1);
    VerificationReport rep;
    rep.suite = "functional";
    rep.params = to_key_values(p);
    rep.n = long(max_len);
    rep.merge(check_defining_relations(p, max_len, trials, seed));
    rep.merge(check_evaluation_paths(p, max_len));
    return rep;
}

inline bool has_zero_parameter(const AWParams& p) { return p.a == 0 || p.b == 0 || p.c == 0 || p.d == 0; }

inline VerificationReport rep_suite(const AWParams& p, long N)
{
    if (N < 3) throw InvalidParams("rep needs --n >= 3");
    validate(p, N + 1);
    VerificationReport rep;
    rep.suite = "rep";
    rep.params = to_key_values(p);
    rep.n = N;
    auto [D, E] = rep_rational(p, size_t(N));
    rep.merge(verify_algebra(D, E, p.q));
    rep.merge(verify_boundary(D, E, p));
    rep.merge(verify_functional_route(p, std::min<long>(6, N - 2)));

    auto [Du, Eu] = rep_uchiyama_rational(p, size_t(N), AmplitudeNormalization::with_pair_factors);
    rep.merge(verify_algebra(Du, Eu, p.q, "uchiyama_pair_normalized_algebra"));
    auto [Dd, Ed] = rep_uchiyama_rational(p, size_t(N), AmplitudeNormalization::as_displayed);
    const VerificationReport displayed = verify_algebra(Dd, Ed, p.q);
    if (!displayed.all_pass()) {
        const auto& cx = *displayed.checks.front().first_failure;
        rep.notes.push_back("amplitude A_n^2 = g_n without (1 - ac q^n)(1 - bd q^n) breaks d e - q e d = 1 - q at (" +
                            std::to_string(cx.indices[0]) + ", " + std::to_string(cx.indices[1]) + ")");
    }

    bool positive = true;
    for (long k = 0; k + 1 < N; ++k) positive = positive && g_coeff(p, k) > 0;
    if (positive) {
        const unsigned bits = precision_bits();
        const Float err = similarity_discrepancy(p, size_t(std::min<long>(N, 16)), bits);
        Float tol(1, bits);
        mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), bits / 2);
        rep.record("orthonormal_is_rescaled_monic", err < tol, Counterexample{{}, "< 2^-" + std::to_string(bits / 2), "", ""});
    } else {
        rep.notes.push_back("orthonormal form skipped: some g_n <= 0");
    }

    if (has_zero_parameter(p))
        rep.notes.push_back("Askey-Wilson comparison skipped: a zero parameter makes s' undefined");
    else
        rep.merge(verify_aw_match(p, std::min<long>(20, N - 2), 24));
    return rep;
}

inline VerificationReport aw_suite(const AWParams& p, long n, const std::vector<Rational>& ts)
{
    if (has_zero_parameter(p)) throw ZeroParameter("aw needs a, b, c, d != 0");
    validate(p, 2 * n + 2);
    VerificationReport rep = verify_aw_series(p, n, ts);
    rep.suite = "aw";
    for (const Rational& t : ts) {
        const auto rec = aw_by_recurrence(p, n, t);
        long bad = -1;
        for (long k = 0; k <= n && bad < 0; ++k)
            if (rec[size_t(k)] != aw_eval(p, k, t)) bad = k;
        rep.record("series_equals_recurrence[t=" + to_string(t) + "]", bad < 0,
                   Counterexample{{bad}, bad < 0 ? "" : to_string(rec[size_t(bad)]),
                                  bad < 0 ? "" : to_string(aw_eval(p, bad, t)), ""});
    }
    return rep;
}

struct StationaryOutcome {
    ComparisonReport comparison;
    VerificationReport checks;
};

inline StationaryOutcome stationary_suite(const AWParams& p, int L, const std::vector<AnsatzVariant>& variants)
{
    StationaryOutcome out{compare(L, p, variants), {}};
    out.checks.suite = "stationary";
    out.checks.params = to_key_values(p);
    out.checks.n = L;
    const RateMatrix M = generator(L, out.comparison.rates);
    out.checks.record("oracle_balance", balance_residual(M, out.comparison.oracle) == 0);
    out.checks.record("oracle_sums_to_one", out.comparison.oracle.total() == 1);
    for (const auto& v : out.comparison.variants)
        out.checks.record(std::string(to_string(v.variant)) + "_sums_to_one", v.distribution.total() == 1);
    const auto matching = out.comparison.matching();
    out.checks.record("some_variant_matches_oracle", !matching.empty());
    for (auto v : matching) out.checks.notes.push_back(std::string("matching variant: ") + to_string(v));
    return out;
}

inline nlohmann::ordered_json stationary_json(const StationaryOutcome& s)
{
    nlohmann::ordered_json j = to_json(s.comparison);
    nlohmann::ordered_json names = nlohmann::ordered_json::array();
    for (auto v : s.comparison.matching()) names.push_back(to_string(v));
    j["matching_variants"] = std::move(names);
    j["checks"] = to_json(s.checks)["checks"];
    return j;
}

// Built-in grid ----------------------------------------------------------------

struct GridPoint {
    std::string label;
    AWParams params;
};

inline std::vector<GridPoint> builtin_grid()
{
    auto P = [](const char* label, const char* a, const char* b, const char* c, const char* d, const char* q) {
        return GridPoint{label, AWParams::make(parse_rational(a), parse_rational(b), parse_rational(c),
                                               parse_rational(d), parse_rational(q))};
    };
    return {
        P("generic-1", "1", "1/2", "-1/3", "-1/4", "1/2"),
        P("generic-2", "2", "3/2", "-1/5", "-1/7", "1/4"),
        P("generic-3", "1/2", "3", "-1/2", "-1/3", "2/5"),
        P("generic-4", "3/4", "2/3", "-2/5", "-1/6", "1/4"),
        P("generic-5", "5/3", "1/4", "-1/7", "-3/5", "3/5"),
        P("three-parameter", "1/2", "1/3", "0", "0", "1/3"),
        P("near-singular", "4", "3", "-1/5", "-83/100", "1/2"),  // abcd q = 249/250
    };
}

inline nlohmann::ordered_json verify_all(const Options& o, bool& all_pass)
{
    const auto grid = builtin_grid();
    const long n = size_or(o, 16);
    const std::vector<Rational> ts{2, Rational(3, 2), 5};
    // One job per (point, suite); assembled in grid order afterwards.
    constexpr size_t kSuites = 6;
    auto jobs = parallel_map(grid.size() * kSuites, [&](size_t idx) -> nlohmann::ordered_json {
        const GridPoint& g = grid[idx / kSuites];
        const AWParams& p = g.params;
        switch (idx % kSuites) {
            case 0: return to_json(ldu_suite(p, n), o.timings);
            case 1: return to_json(polys_suite(p, std::min<long>(n, 12)), o.timings);
            case 2: return to_json(functional_suite(p, size_t(o.max_len), o.trials, o.seed), o.timings);
            case 3: return to_json(rep_suite(p, 32), o.timings);
            case 4: {
                if (has_zero_parameter(p)) return nullptr;
                return to_json(aw_suite(p, 8, ts), o.timings);
            }
            default: {
                nlohmann::ordered_json runs = nlohmann::ordered_json::array();
                for (int L = 1; L <= std::min(o.L, kCompareMaxLength); ++L)
                    runs.push_back(stationary_json(stationary_suite(p, L, {AnsatzVariant::shifted, AnsatzVariant::unshifted})));
                return runs;
            }
        }
    });

    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    all_pass = true;
    auto passes = [](const nlohmann::ordered_json& checks) {
        for (const auto& c : checks)
            if (!c["pass"].get<bool>()) return false;
        return true;
    };
    for (size_t i = 0; i < grid.size(); ++i) {
        nlohmann::ordered_json pj;
        pj["label"] = grid[i].label;
        pj["params"] = to_key_values(grid[i].params);
        nlohmann::ordered_json suites = nlohmann::ordered_json::array();
        for (size_t s = 0; s < kSuites; ++s) {
            auto& j = jobs[i * kSuites + s];
            if (j.is_null()) continue;
            if (j.is_array()) {
                for (auto& run : j) all_pass = all_pass && passes(run["checks"]);
                nlohmann::ordered_json wrapped;
                wrapped["suite"] = "stationary";
                wrapped["runs"] = std::move(j);
                suites.push_back(std::move(wrapped));
            } else {
                all_pass = all_pass && passes(j["checks"]);
                suites.push_back(std::move(j));
            }
        }
        pj["suites"] = std::move(suites);
        points.push_back(std::move(pj));
    }
    nlohmann::ordered_json out;
    out["command"] = "verify-all";
    out["all_pass"] = all_pass;
    out["grid"] = std::move(points);
    return out;
}

// Entry point ------------------------------------------------------------------

inline std::vector<AnsatzVariant> variants_from(const std::string& s)
{
    if (s == "both") return {AnsatzVariant::shifted, AnsatzVariant::unshifted};
    return {parse_variant(s)};
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Exact checks for the five-parameter ASEP matrix-product algebra"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub, bool with_params, const char* size_flag, const char* size_help) {
        if (with_params) o.params.attach(sub);
        if (std::string(size_flag) == "--L")
            sub->add_option("--L", o.L, size_help);
        else if (size_flag[0])
            sub->add_option(size_flag, o.n, size_help);
        sub->add_option("--out", o.out, "write the report here instead of stdout");
        sub->add_option("--format", o.format, "json or csv");
        sub->add_flag("--timings", o.timings, "include wall-clock timings in JSON reports");
    };

    auto* bim = app.add_subcommand("bimoment", "dump the (n+1) x (n+1) bimoment block");
    common(bim, true, "--n", "block index n (default 4)");
    auto* ldu = app.add_subcommand("ldu", "check B = L D U and the determinant routes");
    common(ldu, true, "--n", "block index n (default 16)");
    auto* polys = app.add_subcommand("polys", "polynomial routes and bi-orthogonality");
    common(polys, true, "--n", "maximal degree (default 10)");
    auto* fun = app.add_subcommand("functional", "fuzz the defining relations of the functional");
    common(fun, true, "", "");
    fun->add_option("--seed", o.seed, "random seed");
    fun->add_option("--trials", o.trials, "instances per relation");
    fun->add_option("--max-len", o.max_len, "maximal word length");
    auto* repc = app.add_subcommand("rep", "tridiagonal representations and the Askey-Wilson match");
    common(repc, true, "--n", "truncation size N (default 32)");
    auto* aw = app.add_subcommand("aw", "Askey-Wilson series against the recurrence");
    common(aw, true, "--n", "maximal degree (default 8)");
    aw->add_option("--t", o.ts, "evaluation points t (default 2 3/2 5)");
    auto* stat = app.add_subcommand("stationary", "matrix-product state against the exact master equation");
    common(stat, true, "--L", "number of sites (default 4)");
    stat->add_option("--variant", o.variant, "shifted, unshifted or both");
    auto* all = app.add_subcommand("verify-all", "every suite over the built-in parameter grid");
    common(all, false, "--n", "block index for the LDU suite (default 16)");
    all->add_option("--L", o.L, "largest chain for the stationary comparison (default 6)");
    all->add_option("--seed", o.seed, "random seed");
    all->add_option("--trials", o.trials, "instances per relation");
    all->add_option("--max-len", o.max_len, "maximal word length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidConfig;
    }

    try {
        if (o.n < -1 || o.L < 1 || o.trials < 0 || o.max_len < 0) throw InvalidParams("sizes must be non-negative");
        VerificationReport report;
        if (*bim) {
            require_format(o, {"csv", "json"});
            const AWParams p = o.params.resolve();
            const long n = size_or(o, 4);
            validate(p, 2 * n + 1);
            const BimomentMatrix b = bimoment_block(p, n);
            if (o.format == "json") {
                emit(o, out, dump(to_json(b)));
            } else {
                std::ostringstream s;
                write_csv(s, b.entries);
                emit(o, out, s.str());
            }
            return kPass;
        }
        if (*stat) {
            require_format(o, {"csv", "json"});
            const AWParams p = o.params.resolve();
            const StationaryOutcome s = stationary_suite(p, o.L, variants_from(o.variant));
            if (o.format == "csv") {
                std::ostringstream os;
                write_csv(os, s.comparison.oracle);
                emit(o, out, os.str());
            } else {
                emit(o, out, dump(stationary_json(s)));
            }
            return s.checks.all_pass() ? kPass : kFailedCheck;
        }
        if (*all) {
            require_format(o, {"json"});
            if (all->count("--L") == 0) o.L = kCompareMaxLength;
            bool pass = true;
            const nlohmann::ordered_json j = verify_all(o, pass);
            emit(o, out, dump(j));
            return pass ? kPass : kFailedCheck;
        }

        require_format(o, {"json"});
        const AWParams p = o.params.resolve();
        if (*ldu) report = ldu_suite(p, size_or(o, 16));
        else if (*polys) report = polys_suite(p, size_or(o, 10));
        else if (*fun) report = functional_suite(p, size_t(o.max_len), o.trials, o.seed);
        else if (*repc) report = rep_suite(p, size_or(o, 32));
        else if (*aw) {
            std::vector<Rational> ts;
            for (const auto& t : o.ts) ts.push_back(parse_rational(t));
            if (ts.empty()) ts = {2, Rational(3, 2), 5};
            report = aw_suite(p, size_or(o, 8), ts);
        }
        emit(o, out, dump(to_json(report, o.timings)));
        return report.all_pass() ? kPass : kFailedCheck;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidConfig;
    }
}

}  // namespace biorth::cli
