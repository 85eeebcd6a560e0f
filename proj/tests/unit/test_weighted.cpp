#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "random_machines.hpp"
#include "wmethod/error.hpp"
#include "wmethod/rational.hpp"
#include "wmethod/weighted.hpp"

using namespace wmethod;

namespace {

Suite suite(const Alphabet& ab, std::initializer_list<const char*> ws) {
    std::vector<Word> out;
    for (const char* w : ws) out.push_back(make_word(ab, w));
    return Suite(ab, out);
}

} // namespace

TEST_CASE("rational parsing and printing") {
    CHECK(parse_rat("3") == Rat(3));
    CHECK(parse_rat("-3/6") == Rat(-1, 2));
    CHECK(parse_rat("0/5") == Rat(0));
    CHECK_FALSE(parse_rat("1/0"));
    CHECK_FALSE(parse_rat("3/-4"));
    CHECK_FALSE(parse_rat("x"));
    CHECK_FALSE(parse_rat(""));
    CHECK_FALSE(parse_rat("1.5"));
    CHECK(to_string(Rat(-6, 4)) == "-3/2");
    CHECK(to_string(Rat(4, 2)) == "2");
    CHECK(to_string(Rat(0)) == "0");
}

TEST_CASE("echelon span coordinates") {
    EchelonSpan span(3);
    CHECK(span.insert({Rat(1), Rat(1), Rat(0)}));
    CHECK(span.insert({Rat(0), Rat(1), Rat(1)}));
    CHECK_FALSE(span.insert({Rat(1), Rat(2), Rat(1)}));
    CHECK(span.rank() == 2);
    CHECK(span.contains({Rat(2), Rat(3), Rat(1)}));
    CHECK_FALSE(span.contains({Rat(0), Rat(0), Rat(1)}));
    auto c = span.coordinates({Rat(2), Rat(3), Rat(1)});
    REQUIRE(c);
    CHECK(*c == RatVec{Rat(2), Rat(1)});
    CHECK_FALSE(span.coordinates({Rat(0), Rat(0), Rat(1)}));
}

TEST_CASE("binary reader computes binary values") {
    const Wa spec = fixture::wa("binary.wa");
    CHECK(spec.weight(0, 1, 1) == 1);
    for (const auto& w : oracle::words_upto(2, 6)) CHECK(wa_lang(spec, w) == Rat(oracle::binary_value(w)));
}

TEST_CASE("binary reader cover, characterization set, fault domain and W1 suite") {
    const Wa spec = fixture::wa("binary.wa");
    const Wa impl = fixture::wa("binary_faulty.wa");
    const auto& ab = spec.alphabet();
    const Suite eb = suite(ab, {"-eps-", "b"});

    CHECK(Suite(ab, forward_basis(spec).witnesses) == eb);
    CHECK(Suite(ab, backward_basis(spec).witnesses) == eb);
    CHECK(is_minimal_wa(spec));
    CHECK(is_state_cover_wa(spec, eb));
    CHECK(is_char_set_wa(spec, eb));
    CHECK_FALSE(is_state_cover_wa(spec, suite(ab, {"-eps-", "a"})));
    CHECK(in_fault_domain_wa(impl, eb, 1));
    CHECK_FALSE(in_fault_domain_wa(impl, eb, 0));

    const Suite t = w_suite(eb, ab, 1, eb);
    CHECK(t.size() == 17);
    std::vector<Verdict> fails;
    for (const auto& v : agree_on_wa(spec, impl, t))
        if (!v.pass) fails.push_back(v);
    REQUIRE(fails.size() == 1);
    CHECK(format_word(ab, fails[0].word) == "baab");
    CHECK(fails[0].spec_out == "9");
    CHECK(fails[0].impl_out == "13");

    auto r = equiv_wa(spec, impl);
    CHECK_FALSE(r.equivalent);
    REQUIRE(r.counterexample);
    CHECK(format_word(ab, *r.counterexample) == "baab");
}

TEST_CASE("out-of-domain implementation passes the W1 suite") {
    const Wa spec = fixture::wa("binary.wa");
    const Wa impl = fixture::wa("binary_boundary.wa");
    const auto& ab = spec.alphabet();
    const Suite eb = suite(ab, {"-eps-", "b"});
    CHECK_FALSE(in_fault_domain_wa(impl, eb, 1));
    CHECK(all_pass(agree_on_wa(spec, impl, w_suite(eb, ab, 1, eb))));
    auto r = equiv_wa(spec, impl);
    REQUIRE(r.counterexample);
    CHECK(format_word(ab, *r.counterexample) == "aaa");
}

TEST_CASE("minimization and zero-dimensional automata") {
    const Wa spec = fixture::wa("binary.wa");
    CHECK(minimize_wa(spec).dim() == 2);
    const Wa faulty = fixture::wa("binary_faulty.wa");
    CHECK(minimize_wa(faulty).dim() == oracle::wa_hankel_rank(faulty, 5));

    const Alphabet ab{"a"};
    RatMatrix m(2, 2);
    m(0, 0) = 1;
    const Wa zero(ab, 2, {Rat(1), Rat(0)}, {m}, {Rat(0), Rat(1)});
    const Wa empty = minimize_wa(zero);
    CHECK(empty.dim() == 0);
    CHECK(wa_lang(empty, Word{0, 0}) == 0);
    CHECK(equiv_wa(zero, empty).equivalent);
    CHECK(is_minimal_wa(empty));
}

TEST_CASE("construction errors") {
    const Alphabet ab{"a"};
    CHECK_THROWS_AS(Wa(ab, 2, {Rat(1)}, {RatMatrix(2, 2)}, {Rat(0), Rat(1)}), MismatchError);
    CHECK_THROWS_AS(Wa(ab, 2, {Rat(1), Rat(0)}, {RatMatrix(1, 2)}, {Rat(0), Rat(1)}), MismatchError);
    CHECK_THROWS_AS(Wa(ab, 1, {Rat(1)}, {}, {Rat(1)}), MismatchError);
    const Wa a(ab, 1, {Rat(1)}, {RatMatrix(1, 1)}, {Rat(1)});
    const Wa b(Alphabet{"b"}, 1, {Rat(1)}, {RatMatrix(1, 1)}, {Rat(1)});
    CHECK_THROWS_AS(equiv_wa(a, b), MismatchError);
}

TEST_CASE("property: minimization, equivalence and bases agree with brute force") {
    Rng rng(31337);
    for (int round = 0; round < 120; ++round) {
        const std::size_t dim = 1 + rng.below(4), nsym = 1 + rng.below(2);
        const Wa a = gen::wa(rng, dim, nsym);
        const std::size_t hankel = oracle::wa_hankel_rank(a, dim);
        const Wa small = minimize_wa(a);
        CHECK(small.dim() == hankel);
        CHECK(is_minimal_wa(small));
        CHECK(is_minimal_wa(a) == (oracle::wa_observability_rank(a) == dim));
        CHECK_FALSE(oracle::wa_differ(a, small, 2 * dim));

        const auto fwd = forward_basis(a);
        for (std::size_t i = 0; i < fwd.rank(); ++i) CHECK(fwd.vectors[i] == wa_state(a, a.initial(), fwd.witnesses[i]));

        const Wa b = rng.coin() ? gen::wa(rng, 1 + rng.below(4), nsym) : small;
        auto r = equiv_wa(a, b);
        auto brute = oracle::wa_differ(a, b, a.dim() + b.dim());
        CHECK(r.equivalent == !brute.has_value());
        if (brute) {
            REQUIRE(r.counterexample);
            CHECK(r.counterexample->size() == brute->size());
            CHECK(oracle::wa_value(a, *r.counterexample) != oracle::wa_value(b, *r.counterexample));
        }
    }
}

TEST_CASE("property: W suites of minimal automata catch in-domain faults") {
    Rng rng(5);
    for (int round = 0; round < 40; ++round) {
        const Wa spec = gen::minimal_wa(rng, 1 + rng.below(3), 2);
        const Suite p(spec.alphabet(), forward_basis(spec).witnesses);
        const Suite w(spec.alphabet(), backward_basis(spec).witnesses);
        CHECK(is_state_cover_wa(spec, p));
        CHECK(is_char_set_wa(spec, w));
        const Wa impl = gen::wa(rng, spec.dim(), 2);
        if (!in_fault_domain_wa(impl, p, 0)) continue;
        const bool pass = all_pass(agree_on_wa(spec, impl, w_suite(p, spec.alphabet(), 0, w)));
        if (pass) CHECK(equiv_wa(spec, impl).equivalent);
    }
}
