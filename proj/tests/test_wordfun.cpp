#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace biorth;
using namespace testing_support;

namespace {

WordPoly W(const char* s, Rational c = 1) { return WordPoly(Word(s), c); }

std::string all_words_label(size_t len, unsigned long bits)
{
    std::string w(len, 'd');
    for (size_t i = 0; i < len; ++i) w[i] = (bits >> i) & 1 ? 'e' : 'd';
    return w;
}

}  // namespace

TEST_CASE("words validate their letters", "[wordfun]")
{
    CHECK_THROWS_AS(Word("dxe"), ParseError);
    CHECK(Word::monomial(2, 3).letters == "ddeee");
    CHECK(Word("ddee").is_normal_ordered());
    CHECK_FALSE(Word("ded").is_normal_ordered());
}

TEST_CASE("word polynomials drop zero coefficients", "[wordfun]")
{
    WordPoly x = W("de") + W("ed", R(2));
    x -= W("de");
    CHECK(x == W("ed", 2));
    x -= W("ed", 2);
    CHECK(x.is_zero());
    CHECK((W("d") * W("e")) == W("de"));
    CHECK(word_poly_from_json(nlohmann::json::parse(to_json(W("de", R(-3, 4)) + W("")).dump())) == W("de", R(-3, 4)) + W(""));
}

TEST_CASE("normal ordering", "[wordfun]")
{
    const Rational q = R(1, 3);
    CHECK(normal_order(W("ed"), q) == W("de", 1 / q) - W("", (1 - q) / q));
    CHECK(normal_order(W("ddeee"), q) == W("ddeee"));

    SECTION("output is normal ordered and satisfies the commutation rule")
    {
        NormalOrderer no(q);
        for (size_t len = 0; len <= 6; ++len)
            for (unsigned long bits = 0; bits < (1ul << len); ++bits) {
                const std::string w = all_words_label(len, bits);
                for (const auto& [nw, c] : no.word(w).terms()) CHECK(Word(nw).is_normal_ordered());
                // u (de - q ed) v = q' u v after normal ordering
                for (size_t k = 0; k <= len; ++k) {
                    const std::string u = w.substr(0, k), v = w.substr(k);
                    const WordPoly lhs = no(W((u + "de" + v).c_str()) - W((u + "ed" + v).c_str(), q));
                    CHECK(lhs == no(W((u + v).c_str(), 1 - q)));
                }
            }
    }
}

TEST_CASE("functional on low words", "[wordfun]")
{
    const AWParams p = canonical();
    LinearFunctional L(p);
    const BimomentMatrix B = bimoment_block(p, 2);
    CHECK(L(WordPoly::unit()) == 1);
    for (long n = 0; n <= 2; ++n)
        for (long m = 0; m <= 2; ++m) CHECK(L.word(Word::monomial(n, m).letters) == B(n, m));
    CHECK(L.word("ed") == (B(1, 1) - (1 - p.q)) / p.q);
    CHECK(L(W("de") - W("ed", p.q)) == 1 - p.q);
    CHECK(L(W("e") + W("d", p.a * p.c)) == p.a + p.c);
    CHECK(L(W("dd") + W("de", p.b * p.d) - W("d", p.b + p.d)) == 0);
    CHECK(functional(W("ede"), p) == L.word("ede"));
}

TEST_CASE("functional agrees with the representation on all short words", "[wordfun][repmat]")
{
    for (const AWParams& p : {canonical(), three_parameter()}) {
        LinearFunctional L(p);
        for (size_t len = 0; len <= 6; ++len)
            for (unsigned long bits = 0; bits < (1ul << len); ++bits) {
                const std::string w = all_words_label(len, bits);
                INFO(w);
                CHECK(L.word(w) == matrix_element(p, w));
            }
    }
}

TEST_CASE("boundary eliminations", "[wordfun]")
{
    const AWParams p = canonical();
    CHECK(eliminate_left_e(W("e"), p) == W("", p.a + p.c) - W("d", p.a * p.c));
    CHECK(eliminate_right_d(W("d"), p) == W("", p.b + p.d) - W("e", p.b * p.d));
    CHECK_THROWS_AS(eliminate_left_e(W("de"), p), ShapeError);
    CHECK_THROWS_AS(eliminate_right_d(W("de"), p), ShapeError);

    LinearFunctional L(p);
    CHECK(L(eliminate_left_e(W("e"), p)) == bimoment_block(p, 1)(0, 1));
    EliminationEvaluator left(p, EliminationSide::left);
    for (int n = 0; n <= 6; ++n) {
        const std::string w = "e" + std::string(size_t(n), 'd');
        CHECK(left.word(w) == L.word(w));
    }
}

TEST_CASE("defining relations and evaluation paths", "[wordfun]")
{
    for (const AWParams& p : sample_sets()) {
        INFO(describe(p));
        CHECK(check_defining_relations(p, 8, 50).all_pass());
        CHECK(check_evaluation_paths(p, 7).all_pass());
    }
}

TEST_CASE("a wrong functional is caught", "[wordfun]")
{
    // the evaluation paths disagree when the boundary data belong to other parameters
    const AWParams p = canonical();
    AWParams other = p;
    other.b = R(1, 3);
    LinearFunctional L(p);
    EliminationEvaluator left(other, EliminationSide::left);
    bool differs = false;
    for (const char* w : {"d", "dd", "de", "ed"}) differs = differs || left.word(w) != L.word(w);
    CHECK(differs);
}

TEST_CASE("random parameters: relations", "[wordfun][property]")
{
    RationalGen gen(404);
    for (int trial = 0; trial < 10; ++trial) {
        const AWParams p = gen.params(10);
        INFO(describe(p));
        CHECK(check_defining_relations(p, 7, 30, 1000 + trial).all_pass());
        CHECK(check_evaluation_paths(p, 5).all_pass());
    }
}

TEST_CASE("concurrent evaluation matches sequential", "[wordfun][concurrency]")
{
    const AWParams p = canonical();
    LinearFunctional shared(p), sequential(p);
    const auto values = parallel_map(256, [&](size_t k) { return shared.word(all_words_label(8, k)); }, 8);
    for (size_t k = 0; k < 256; ++k) CHECK(values[k] == sequential.word(all_words_label(8, k)));
}
