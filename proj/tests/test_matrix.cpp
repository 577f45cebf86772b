#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace biorth;
using namespace testing_support;

namespace {

Matrix<Rational> random_matrix(RationalGen& gen, size_t n, size_t m)
{
    Matrix<Rational> a(n, m);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) a(i, j) = gen.next();
    return a;
}

}  // namespace

TEST_CASE("matrix products and identities", "[matrix]")
{
    RationalGen gen(3);
    const auto A = random_matrix(gen, 3, 4), B = random_matrix(gen, 4, 2);
    const auto C = A * B;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 2; ++j) {
            Rational s = 0;
            for (size_t k = 0; k < 4; ++k) s += A(i, k) * B(k, j);
            CHECK(C(i, j) == s);
        }
    CHECK(Matrix<Rational>::identity(3) * A == A);
    CHECK(A.transposed().transposed() == A);
    CHECK_FALSE(first_mismatch(A, A).has_value());
    auto A2 = A;
    A2(2, 1) += 1;
    CHECK(first_mismatch(A, A2) == std::optional<std::pair<size_t, size_t>>({2, 1}));
}

TEST_CASE("fraction-free determinant matches plain elimination", "[matrix]")
{
    RationalGen gen(5);
    for (size_t n = 1; n <= 7; ++n)
        for (int trial = 0; trial < 5; ++trial) {
            const auto A = random_matrix(gen, n, n);
            CHECK(determinant(A) == gauss_determinant(A));
        }
    Matrix<Rational> singular(3, 3, Rational(1));
    CHECK(determinant(singular) == 0);
    CHECK(determinant(Matrix<Rational>(0, 0)) == 1);
}

TEST_CASE("one-dimensional null space", "[matrix]")
{
    Matrix<Rational> m(2, 3);
    m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
    m(1, 0) = 0; m(1, 1) = 1; m(1, 2) = R(1, 2);
    auto v = one_dimensional_null_vector(m);
    REQUIRE(v);
    for (size_t i = 0; i < 2; ++i) {
        Rational s = 0;
        for (size_t j = 0; j < 3; ++j) s += m(i, j) * (*v)[j];
        CHECK(s == 0);
    }
    Matrix<Rational> zero(2, 3, Rational(0));
    CHECK_FALSE(one_dimensional_null_vector(zero).has_value());
}
