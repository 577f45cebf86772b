// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "biorth/biorth.hpp"

using namespace biorth;

namespace {

Rational R(long n, long d = 1)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

struct NamedParams {
    const char* label;
    AWParams p;
};

std::vector<NamedParams> grid()
{
    return {
        {"canonical", AWParams::make(1, R(1, 2), R(-1, 3), R(-1, 4), R(1, 2))},
        {"generic-2", AWParams::make(2, R(3, 2), R(-1, 5), R(-1, 7), R(1, 4))},
        {"generic-3", AWParams::make(R(1, 2), 3, R(-1, 2), R(-1, 3), R(2, 5))},
        {"generic-4", AWParams::make(R(3, 4), R(2, 3), R(-2, 5), R(-1, 6), R(1, 4))},
        {"generic-5", AWParams::make(R(5, 3), R(1, 4), R(-1, 7), R(-3, 5), R(3, 5))},
        {"c=d=0", AWParams::make(R(1, 2), R(1, 3), 0, 0, R(1, 3))},
    };
}

bool has_zero(const AWParams& p) { return p.a == 0 || p.b == 0 || p.c == 0 || p.d == 0; }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            if (pass) detail << " first failure: " << what;
            pass = false;
        }
    }
};

std::string first_failure(const VerificationReport& r)
{
    for (const auto& c : r.checks)
        if (!c.pass) {
            std::string s = r.suite + "/" + c.name;
            if (c.first_failure) {
                s += " at (";
                for (size_t i = 0; i < c.first_failure->indices.size(); ++i)
                    s += (i ? "," : "") + std::to_string(c.first_failure->indices[i]);
                s += ")";
            }
            return s;
        }
    return {};
}

void criterion_ldu(Outcome& o)
{
    double worst = 0;
    for (const auto& [label, p] : grid()) {
        Stopwatch sw;
        const VerificationReport r = verify_ldu(p, 16);
        const double ms = sw.elapsed_ms();
        worst = std::max(worst, ms);
        o.require(r.all_pass(), std::string(label) + " " + first_failure(r));
        o.require(ms <= 60000, std::string(label) + " exceeded 60 s");
    }
    o.detail << " sets=" << grid().size() << " n=16 slowest=" << worst << "ms";
}

void criterion_det(Outcome& o)
{
    for (const auto& [label, p] : grid())
        for (long n = 0; n <= 12; ++n) {
            const DeterminantRoutes d = det_bimoment(p, n);
            o.require(d.agree(), std::string(label) + " n=" + std::to_string(n));
        }
    o.detail << " n<=12";
}

void criterion_biortho(Outcome& o)
{
    for (const auto& [label, p] : grid()) {
        const VerificationReport b = biorthogonality_check(p, 10);
        o.require(b.all_pass(), std::string(label) + " " + first_failure(b));
        const VerificationReport r = polynomial_routes_check(p, 12);
        o.require(r.all_pass(), std::string(label) + " " + first_failure(r));
    }
    o.detail << " n,m<=10 routes n<=12";
}

void criterion_rep(Outcome& o)
{
    for (const auto& [label, p] : grid()) {
        auto [D, E] = rep_rational(p, 32);
        const VerificationReport a = verify_algebra(D, E, p.q);
        o.require(a.all_pass(), std::string(label) + " " + first_failure(a));
        const VerificationReport b = verify_boundary(D, E, p);
        o.require(b.all_pass(), std::string(label) + " " + first_failure(b));
    }
    o.detail << " N=32";
}

void criterion_aw(Outcome& o)
{
    const std::vector<Rational> ts{2, R(3, 2), 5};
    int sets = 0;
    for (const auto& [label, p] : grid()) {
        if (has_zero(p)) continue;
        ++sets;
        const VerificationReport m = verify_aw_match(p, 20, 24);
        o.require(m.all_pass(), std::string(label) + " " + first_failure(m));
        const VerificationReport s = verify_aw_series(p, 8, ts);
        o.require(s.all_pass(), std::string(label) + " " + first_failure(s));
    }
    o.detail << " sets=" << sets << " n<=20 k<=24 series n<=8";
}

void criterion_stationary(Outcome& o)
{
    Stopwatch sw;
    int sets = 0;
    for (const auto& [label, p] : grid()) {
        if (!to_rates(p).is_valid()) continue;
        ++sets;
        std::vector<AnsatzVariant> common{AnsatzVariant::shifted, AnsatzVariant::unshifted};
        for (int L = 1; L <= 6; ++L) {
            const ComparisonReport c = compare(L, p);
            std::vector<AnsatzVariant> now = c.matching(), kept;
            for (auto v : common)
                if (std::find(now.begin(), now.end(), v) != now.end()) kept.push_back(v);
            common = kept;
            o.require(!now.empty(), std::string(label) + " L=" + std::to_string(L) + " no variant matches");
        }
        o.require(!common.empty(), std::string(label) + " matching variant changes with L");
        if (!common.empty() && sets == 1) o.detail << " matching=" << to_string(common.front());
    }
    const double ms = sw.elapsed_ms();
    o.require(sets >= 3, "fewer than three physical parameter sets");
    o.require(ms <= 300000, "exceeded 5 min");
    o.detail << " sets=" << sets << " L=1..6 time=" << ms << "ms";
}

void criterion_functional(Outcome& o)
{
    for (const auto& [label, p] : grid()) {
        const VerificationReport r = check_defining_relations(p, 8, 200);
        o.require(r.all_pass(), std::string(label) + " " + first_failure(r));
        const VerificationReport e = check_evaluation_paths(p, 8);
        o.require(e.all_pass(), std::string(label) + " " + first_failure(e));
    }
    o.detail << " trials=200 len<=8, all words len<=8";
}

void criterion_bimoment(Outcome& o)
{
    for (const auto& [label, p] : grid()) {
        const VerificationReport r = verify_bimoment_recurrences(p, 8);
        o.require(r.all_pass(), std::string(label) + " " + first_failure(r));
        o.require(check_transpose_symmetry(p, 8, TransposeSwap::ab_cd), std::string(label) + " (a,b,c,d)->(b,a,d,c)");
        o.require(check_transpose_symmetry(p, 8, TransposeSwap::ad_bc), std::string(label) + " (a,b,c,d)->(d,c,b,a)");

        BimomentTriangle B(p);
        B.extend(12);
        LinearFunctional L(p);
        EliminationEvaluator left(p, EliminationSide::left), right(p, EliminationSide::right);
        for (long n = 0; n <= 12; ++n)
            for (long m = 0; n + m <= 12; ++m) {
                const WordPoly w(Word::monomial(n, m));
                const std::string at = std::string(label) + " (" + std::to_string(n) + "," + std::to_string(m) + ")";
                o.require(L(w) == B.at(n, m), at + " functional");
                o.require(left(w) == B.at(n, m), at + " left elimination");
                o.require(right(w) == B.at(n, m), at + " right elimination");
            }
    }
    o.detail << " 9x9 blocks, n+m<=12";
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
        {"1 LDU factorization n=16", criterion_ldu},
        {"2 determinant triple agreement", criterion_det},
        {"3 bi-orthogonality", criterion_biortho},
        {"4 tridiagonal representation", criterion_rep},
        {"5 Askey-Wilson match", criterion_aw},
        {"6 stationary state vs oracle", criterion_stationary},
        {"7 functional fuzzing", criterion_functional},
        {"8 bimoment integrity", criterion_bimoment},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        Stopwatch sw;
        try {
            run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " exception: " << e.what();
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << name << "]" << o.detail.str() << " (" << sw.elapsed_ms()
                  << " ms)" << std::endl;
        failed += o.pass ? 0 : 1;
    }
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - size_t(failed) << "/" << criteria.size()
              << std::endl;
    return failed ? 1 : 0;
}
