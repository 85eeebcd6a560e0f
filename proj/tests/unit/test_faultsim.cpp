#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <regex>
#include <sstream>

#include "fixtures.hpp"
#include "random_machines.hpp"
#include "wmethod/error.hpp"
#include "wmethod/faultsim.hpp"

using namespace wmethod;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

void check_report_shape(const ExperimentReport& r) {
    const auto lines = lines_of(r.render());
    REQUIRE(lines.size() == r.outcomes.size() + 2);
    CHECK(lines.front().starts_with("# faultsim family="));
    CHECK(lines.front().find("seed=" + std::to_string(r.seed)) != std::string::npos);
    const std::regex mutant(R"(mutant \d+ (in|out)-domain (killed-by \S+|survived) oracle (equiv|inequiv|timeout))");
    for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
        CAPTURE(lines[i]);
        CHECK(std::regex_match(lines[i], mutant));
        CHECK(lines[i].starts_with("mutant " + std::to_string(i - 1) + " "));
    }
    CHECK(lines.back().starts_with("summary mutants=" + std::to_string(r.outcomes.size())));
    CHECK(lines.back().ends_with(r.passed() ? "result=PASS" : "result=FAIL"));
}

} // namespace

TEST_CASE("random draws are reproducible and in range") {
    Rng a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        auto x = a.below(7);
        CHECK(x < 7);
        CHECK(x == b.below(7));
        differs = differs || x != c.below(7);
    }
    CHECK(differs);
}

TEST_CASE("FSM mutants stay within n+k states") {
    const Fsm spec = fixture::fsm("coffee.aut");
    CHECK(gen_mutants_fsm(spec, {Family::fsm, 1, 0, 1}).empty());
    for (std::size_t k : {0u, 2u}) {
        auto ms = gen_mutants_fsm(spec, {Family::fsm, k, 100, 9});
        CHECK(ms.size() == 100);
        for (const auto& m : ms) {
            CHECK(m.n_states() <= spec.n_states() + k);
            CHECK(m.alphabet() == spec.alphabet());
        }
        CHECK(ms == gen_mutants_fsm(spec, {Family::fsm, k, 100, 9}));
    }
}

TEST_CASE("coffee machine completeness experiment") {
    const Fsm spec = fixture::fsm("coffee.aut");
    const Fsm boundary = fixture::fsm("coffee_boundary.aut");
    const std::vector<Fsm> extra{fixture::fsm("coffee_i1.aut"), fixture::fsm("coffee_i2.aut"), boundary};
    const MutationSpec ms{Family::fsm, 0, 200, 1};
    const auto r = completeness_experiment(spec, 0, ms, extra);
    CHECK(r.outcomes.size() == 203);
    CHECK(r.suite_size == 31);
    CHECK(r.passed());
    CHECK(r.in_domain_survivors() == 0);
    CHECK(r.outcomes[200].killed_by == "11c1");
    CHECK(r.outcomes[201].killed_by == "11ec");
    const auto& b = r.outcomes[202];
    CHECK_FALSE(b.in_domain);
    CHECK_FALSE(b.killed_by);
    CHECK(b.oracle == OracleVerdict::inequivalent);
    check_report_shape(r);
    CHECK(r.render() == completeness_experiment(spec, 0, ms, extra).render());
    CHECK(r.render().find("mutant 202 out-domain survived oracle inequiv\n") != std::string::npos);

    const Fsm redundant(FsmKind::dfa, Alphabet{"a"}, 2, 0, {1, 0}, {"1", "1"});
    CHECK_THROWS_AS(completeness_experiment(redundant, 0, ms), PreconditionError);
}

TEST_CASE("Moore and Mealy completeness experiments") {
    for (const char* name : {"coffee_moore.aut", "lamp_mealy.aut"}) {
        CAPTURE(name);
        const Fsm spec = fixture::fsm(name);
        for (std::size_t k : {0u, 1u}) {
            const auto r = completeness_experiment(spec, k, {Family::fsm, k, 100, 5});
            CHECK(r.passed());
            check_report_shape(r);
        }
    }
}

TEST_CASE("binary reader completeness experiment") {
    const Wa spec = fixture::wa("binary.wa");
    const std::vector<Wa> extra{fixture::wa("binary_faulty.wa"), fixture::wa("binary_boundary.wa")};
    const auto r = completeness_experiment(spec, 1, {Family::wa, 1, 100, 3}, extra);
    REQUIRE(r.outcomes.size() >= 2);
    CHECK(r.passed());
    for (std::size_t i = 0; i + 2 < r.outcomes.size(); ++i) CHECK(r.outcomes[i].in_domain);
    const auto& faulty = r.outcomes[r.outcomes.size() - 2];
    CHECK(faulty.in_domain);
    CHECK(faulty.killed_by == "baab");
    const auto& boundary = r.outcomes.back();
    CHECK_FALSE(boundary.in_domain);
    CHECK_FALSE(boundary.killed_by);
    CHECK(boundary.oracle == OracleVerdict::inequivalent);
    check_report_shape(r);

    const auto p = Suite(spec.alphabet(), {Word{}, Word{1}});
    for (const auto& m : gen_mutants_wa(spec, p, {Family::wa, 1, 50, 8})) CHECK(in_fault_domain_wa(m, p, 1));
    CHECK(gen_mutants_wa(spec, p, {Family::wa, 1, 0, 8}).empty());
}

TEST_CASE("aa-automaton completeness experiment") {
    const Rna spec = fixture::rna("aa.rna");
    const std::vector<Rna> extra{fixture::rna("aa_flipped.rna"), fixture::rna("aa_retarget.rna"),
                                 fixture::rna("aa_boundary.rna")};
    const auto r = completeness_experiment(spec, 0, {Family::rna, 0, 50, 4}, extra);
    CHECK(r.passed());
    const std::size_t n = r.outcomes.size();
    REQUIRE(n >= 3);
    CHECK(r.outcomes[n - 3].killed_by);
    CHECK(r.outcomes[n - 2].killed_by);
    CHECK_FALSE(r.outcomes[n - 1].in_domain);
    CHECK_FALSE(r.outcomes[n - 1].killed_by);
    check_report_shape(r);
    CHECK(r.render() == completeness_experiment(spec, 0, {Family::rna, 0, 50, 4}, extra).render());
}

TEST_CASE("a surviving in-domain fault fails the experiment") {
    ExperimentReport r;
    r.outcomes.push_back({0, true, std::nullopt, OracleVerdict::inequivalent});
    CHECK_FALSE(r.passed());
    r.outcomes[0].in_domain = false;
    CHECK(r.passed());
    r.outcomes.push_back({1, true, std::nullopt, OracleVerdict::timeout});
    CHECK_FALSE(r.passed());
    CHECK(r.render().ends_with("result=FAIL\n"));
}

TEST_CASE("property: random specs have no in-domain survivors") {
    Rng rng(404);
    for (int round = 0; round < 20; ++round) {
        const Fsm spec = gen::minimal_fsm(rng, static_cast<FsmKind>(rng.below(3)), 2 + rng.below(3), 2);
        const std::size_t k = rng.below(2);
        CHECK(completeness_experiment(spec, k, {Family::fsm, k, 20, rng.below(1000)}).passed());
        const Wa wa = gen::minimal_wa(rng, 1 + rng.below(3), 2);
        CHECK(completeness_experiment(wa, k, {Family::wa, k, 10, rng.below(1000)}).passed());
    }
}
