#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace biorth;
using namespace testing_support;

TEST_CASE("first polynomials by hand", "[biortho]")
{
    const AWParams p = canonical();
    const PolySeq P = polys_from_recurrence(p, 2, Variable::d), Q = polys_from_recurrence(p, 2, Variable::e);
    CHECK(P[0] == Poly{1});
    CHECK(Q[0] == Poly{1});
    CHECK(P[1] == Poly{-d_natural(p, 0), 1});
    CHECK(Q[1] == Poly{-e_natural(p, 0), 1});

    // (x - d_1)(x - d_0) + bd g_0
    const Rational d0 = d_natural(p, 0), d1 = d_natural(p, 1);
    CHECK(P[2] == Poly{d0 * d1 + p.b * p.d * g_coeff(p, 0), -(d0 + d1), 1});

    CHECK(polys_from_inverse(p, 2, Variable::d) == P);
    CHECK(polys_from_inverse(p, 2, Variable::e) == Q);
}

TEST_CASE("first moments fix the diagonal coefficients", "[biortho]")
{
    for (const AWParams& p : sample_sets()) {
        const BimomentMatrix B = bimoment_block(p, 1);
        CHECK(d_natural(p, 0) == B(1, 0));
        CHECK(e_natural(p, 0) == B(0, 1));
        // L(P_1 Q_1) = B_11 - e_0 B_10 - d_0 B_01 + d_0 e_0
        const Rational d0 = d_natural(p, 0), e0 = e_natural(p, 0);
        CHECK(B(1, 1) - e0 * B(1, 0) - d0 * B(0, 1) + d0 * e0 == g_coeff(p, 0));
    }
}

TEST_CASE("bi-orthogonality and route agreement", "[biortho]")
{
    for (const AWParams& p : sample_sets()) {
        INFO(describe(p));
        CHECK(biorthogonality_check(p, 10).all_pass());
        CHECK(polynomial_routes_check(p, 12).all_pass());
        CHECK(monomial_expansion_check(p, 10).all_pass());
    }
}

TEST_CASE("bi-orthogonality through the representation", "[biortho][repmat]")
{
    // <0| P_n(d) Q_m(e) |0> summed word by word
    const AWParams p = canonical();
    const PolySeq P = polys_from_recurrence(p, 3, Variable::d), Q = polys_from_recurrence(p, 3, Variable::e);
    const DiagonalFactor D = build_D(p, 3);
    for (long n = 0; n <= 3; ++n)
        for (long m = 0; m <= 3; ++m) {
            Rational v = 0;
            for (long i = 0; i <= n; ++i)
                for (long j = 0; j <= m; ++j)
                    v += P[n][size_t(i)] * Q[m][size_t(j)] * matrix_element(p, Word::monomial(i, j).letters);
            CHECK(v == (n == m ? D[n] : Rational(0)));
        }
}

TEST_CASE("bordered determinants", "[biortho]")
{
    const AWParams p = canonical();
    auto [P1, Q1] = bordered_polynomials(p, 1);
    const BimomentMatrix B = bimoment_block(p, 1);
    CHECK(P1 == Poly{-B(1, 0), 1});
    CHECK(Q1 == Poly{-B(0, 1), 1});
    auto [P0, Q0] = bordered_polynomials(p, 0);
    CHECK(P0 == Poly{1});
    for (const AWParams& s : sample_sets())
        for (long n = 0; n <= kBorderedLimit; ++n) CHECK(bordered_determinant_check(s, n));
    CHECK_THROWS_AS(bordered_polynomials(p, 7), SizeLimit);
}

TEST_CASE("random parameters: bi-orthogonality", "[biortho][property]")
{
    RationalGen gen(303);
    for (int trial = 0; trial < 20; ++trial) {
        const AWParams p = gen.params(14);
        INFO(describe(p));
        CHECK(biorthogonality_check(p, 6).all_pass());
        CHECK(polynomial_routes_check(p, 6).all_pass());
    }
}

TEST_CASE("polynomial JSON export", "[biortho]")
{
    const auto j = to_json(polys_from_recurrence(canonical(), 1, Variable::e));
    CHECK(j["variable"] == "e");
    CHECK(j["coeffs"][1][1] == "1");
}
