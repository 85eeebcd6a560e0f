#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "random_machines.hpp"
#include "wmethod/error.hpp"
#include "wmethod/words.hpp"

using namespace wmethod;

namespace {

const Alphabet coffee{"c", "e", "1"};

Suite suite(const Alphabet& ab, std::initializer_list<const char*> ws) {
    std::vector<Word> out;
    for (const char* w : ws) out.push_back(make_word(ab, w));
    return Suite(ab, out);
}

} // namespace

TEST_CASE("alphabet validation") {
    CHECK_THROWS_AS(Alphabet(std::vector<std::string>{}), MismatchError);
    CHECK_THROWS_AS(Alphabet({"a", "a"}), MismatchError);
    CHECK_THROWS_AS(Alphabet({"a", ""}), MismatchError);
    CHECK(coffee.find("e") == Symbol{1});
    CHECK_FALSE(coffee.find("x"));
    CHECK_THROWS_AS(coffee.at("x"), MismatchError);
}

TEST_CASE("word text forms") {
    CHECK(make_word(coffee, "11c1") == Word{2, 2, 0, 2});
    CHECK(make_word(coffee, "1 1 c 1") == Word{2, 2, 0, 2});
    CHECK(make_word(coffee, "-eps-").empty());
    CHECK(make_word(coffee, "").empty());
    CHECK(format_word(coffee, make_word(coffee, "11ec")) == "11ec");
    CHECK(format_word(coffee, {}) == "-eps-");

    const Alphabet wide{"go", "stop"};
    CHECK(make_word(wide, "go stop go") == Word{0, 1, 0});
    CHECK(format_word(wide, Word{0, 1, 0}) == "go.stop.go");
    CHECK_THROWS_AS(make_word(wide, "gostop"), MismatchError);
}

TEST_CASE("shortlex order") {
    CHECK(shortlex_less(Word{2}, Word{0, 0}));
    CHECK(shortlex_less(Word{0, 1}, Word{1, 0}));
    CHECK_FALSE(shortlex_less(Word{0}, Word{0}));
}

TEST_CASE("suites are canonical and duplicate-free") {
    Suite t = suite(coffee, {"11", "c", "-eps-", "1", "c", "11"});
    REQUIRE(t.size() == 4);
    CHECK(t.words()[0].empty());
    CHECK(format_word(coffee, t.words()[1]) == "c");
    CHECK(format_word(coffee, t.words()[2]) == "1");
    CHECK(format_word(coffee, t.words()[3]) == "11");
    CHECK(t.contains(make_word(coffee, "11")));
    CHECK_FALSE(t.contains(make_word(coffee, "e")));
    CHECK_THROWS_AS(Suite(coffee, {Word{3}}), MismatchError);
}

TEST_CASE("words_upto counts") {
    for (std::size_t k = 0; k <= 4; ++k) {
        std::size_t expected = 0, pow = 1;
        for (std::size_t i = 0; i <= k; ++i, pow *= 3) expected += pow;
        CHECK(words_upto(coffee, k).size() == expected);
    }
}

TEST_CASE("concatenation and W suite") {
    Suite p = suite(coffee, {"-eps-", "c", "1", "11"});
    Suite w = suite(coffee, {"-eps-", "c", "1"});
    Suite t = w_suite(p, coffee, 0, w);
    CHECK(t.size() == 31);
    CHECK(t.contains(make_word(coffee, "11c1")));
    CHECK(t.contains(make_word(coffee, "11ec")));
    CHECK_FALSE(t.contains(make_word(coffee, "11ce")));

    CHECK_THROWS_AS(w_suite(suite(coffee, {"c"}), coffee, 0, w), PreconditionError);
    CHECK_THROWS_AS(w_suite(p, coffee, 0, suite(coffee, {"c"})), PreconditionError);
    CHECK_THROWS_AS(concat_suites(p, Suite(Alphabet{"a"}, {Word{0}})), MismatchError);
}

TEST_CASE("prefix closure") {
    Suite t = prefix_close(suite(coffee, {"11c"}));
    CHECK(t.size() == 4);
    CHECK(t.contains({}));
    CHECK(t.contains(make_word(coffee, "11")));
}

TEST_CASE("property: concatenation matches the brute-force product") {
    Rng rng(7);
    const Alphabet ab = gen::alphabet(2);
    for (int round = 0; round < 50; ++round) {
        std::vector<Word> a, b;
        for (std::size_t i = 0, n = rng.below(5); i < n; ++i) a.push_back(oracle::words_upto(2, 3)[rng.below(15)]);
        for (std::size_t i = 0, n = rng.below(5); i < n; ++i) b.push_back(oracle::words_upto(2, 3)[rng.below(15)]);
        std::vector<Word> expected;
        for (const auto& u : a)
            for (const auto& v : b) {
                Word uv = u;
                uv.insert(uv.end(), v.begin(), v.end());
                if (std::find(expected.begin(), expected.end(), uv) == expected.end()) expected.push_back(uv);
            }
        Suite got = concat_suites(Suite(ab, a), Suite(ab, b));
        CHECK(got.size() == expected.size());
        for (const auto& w : expected) CHECK(got.contains(w));
        CHECK(std::is_sorted(got.begin(), got.end(), shortlex_less));
    }
}
