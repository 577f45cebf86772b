#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace biorth;
using namespace testing_support;

TEST_CASE("factors match a direct Doolittle factorization", "[ldu]")
{
    for (const AWParams& p : sample_sets()) {
        INFO(describe(p));
        const long n = 8;
        const Doolittle ref = doolittle(bimoment_block(p, n).entries);
        CHECK(build_L(p, n).entries == ref.L);
        CHECK(build_U(p, n).entries == ref.U);
        CHECK(build_D(p, n).entries == ref.D);
    }
}

TEST_CASE("low-order entries by hand", "[ldu]")
{
    const AWParams p = canonical();
    const TriangularFactor L = build_L(p, 3), Li = build_L_inverse(p, 3);
    for (long i = 0; i <= 3; ++i) CHECK(L(i, i) == 1);
    CHECK(L(1, 0) == d_natural(p, 0));
    CHECK(L(2, 0) == d_natural(p, 0) * d_natural(p, 0) - p.b * p.d * g_coeff(p, 0));
    CHECK(Li(1, 0) == -d_natural(p, 0));

    const DiagonalFactor D = build_D(p, 2);
    CHECK(D[0] == 1);
    CHECK(D[1] == g_coeff(p, 0));

    const AWParams t = three_parameter();
    const Rational q = t.q, ab = t.a * t.b;
    CHECK(build_D(t, 2)[2] == (1 - q) * (1 - ab) * (1 - q * q) * (1 - ab * q));
}

TEST_CASE("B = L D U on the canonical and three-parameter sets", "[ldu]")
{
    CHECK(verify_ldu(canonical(), 16).all_pass());
    CHECK(verify_ldu(three_parameter(), 12).all_pass());
    const VerificationReport trivial = verify_ldu(canonical(), 0);
    CHECK(trivial.all_pass());
    CHECK(trivial.find("B_equals_LDU") != nullptr);
}

TEST_CASE("determinant routes", "[ldu]")
{
    for (const AWParams& p : sample_sets()) {
        INFO(describe(p));
        for (long n = 0; n <= 8; ++n) {
            const DeterminantRoutes r = det_bimoment(p, n);
            CHECK(r.agree());
            CHECK(r.elimination == gauss_determinant(bimoment_block(p, n).entries));
        }
        CHECK(det_closed_form(p, 1) == g_coeff(p, 0));
        CHECK(det_closed_form(p, 0) == 1);
    }
}

TEST_CASE("random parameters: B = L D U", "[ldu][property]")
{
    RationalGen gen(202);
    for (int trial = 0; trial < 25; ++trial) {
        const AWParams p = gen.params(14);
        INFO(describe(p));
        CHECK(verify_ldu(p, 6).all_pass());
        CHECK(det_bimoment(p, 6).agree());
    }
}
