// Acceptance checks. Prints one PASS/FAIL line per criterion with its runtime
// and exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "random_machines.hpp"
#include "wmethod/faultsim.hpp"

using namespace wmethod;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

/// Collects the first failed expectation of a criterion.
class Check {
public:
    void expect(bool cond, const std::string& what) {
        if (!cond && ok_) {
            ok_ = false;
            first_ = what;
        }
    }
    Outcome done(std::string detail) const { return {ok_, ok_ ? std::move(detail) : "failed: " + first_}; }

private:
    bool ok_ = true;
    std::string first_;
};

Suite suite(const Alphabet& ab, std::initializer_list<const char*> ws) {
    std::vector<Word> out;
    for (const char* w : ws) out.push_back(make_word(ab, w));
    return Suite(ab, out);
}

template <class V, class F>
std::vector<std::string> failing(const std::vector<V>& verdicts, F&& format) {
    std::vector<std::string> out;
    for (const auto& v : verdicts)
        if (!v.pass) out.push_back(format(v.word));
    return out;
}

SymbolicWord pat(std::vector<std::uint32_t> labels) { return SymbolicWord(std::move(labels)); }

// ---------------------------------------------------------------------------

Outcome coffee_dfa() {
    Check c;
    const Fsm m = fixture::fsm("coffee.aut");
    const auto& ab = m.alphabet();
    const auto fmt = [&](const Word& w) { return format_word(ab, w); };
    c.expect(state_cover(m) == suite(ab, {"-eps-", "c", "1", "11"}), "state cover");
    const Suite w = suite(ab, {"-eps-", "c", "1"});
    c.expect(is_char_set(m, w), "characterization set");
    const Suite t = w_suite(state_cover(m), ab, 0, w);
    const auto f1 = failing(agree_on(m, fixture::fsm("coffee_i1.aut"), t), fmt);
    const auto f2 = failing(agree_on(m, fixture::fsm("coffee_i2.aut"), t), fmt);
    c.expect(f1 == std::vector<std::string>{"11c1"}, "I1 failures");
    c.expect(f2 == std::vector<std::string>{"11ec"}, "I2 failures");
    return c.done("|W0|=" + std::to_string(t.size()) + ", I1 fails on {" + (f1.empty() ? "" : f1[0]) +
                  "}, I2 fails on {" + (f2.empty() ? "" : f2[0]) + "}");
}

Outcome coffee_moore() {
    Check c;
    const Fsm m = fixture::fsm("coffee_moore.aut");
    const auto& ab = m.alphabet();
    const auto fmt = [&](const Word& w) { return format_word(ab, w); };
    const Suite w = suite(ab, {"-eps-", "1"});
    c.expect(is_char_set(m, w), "characterization set");
    const Suite t = w_suite(state_cover(m), ab, 0, w);
    const auto f1 = failing(agree_on(m, fixture::fsm("coffee_moore_i1.aut"), t), fmt);
    const auto f2 = failing(agree_on(m, fixture::fsm("coffee_moore_i2.aut"), t), fmt);
    c.expect(!f1.empty(), "I1 survives");
    c.expect(!f2.empty(), "I2 survives");
    return c.done("|W0|=" + std::to_string(t.size()) + ", I1 killed by " + std::to_string(f1.size()) +
                  " tests, I2 killed by " + std::to_string(f2.size()) + " tests");
}

Outcome dfa_completeness() {
    Check c;
    Rng rng(1001);
    std::size_t mutants = 0, killed = 0, equivalent = 0;
    for (int s = 0; s < 200; ++s) {
        const std::size_t n = 1 + rng.below(6), nsym = 1 + rng.below(3);
        const Fsm spec = gen::minimal_fsm(rng, FsmKind::dfa, n, nsym);
        for (std::size_t k : {0u, 1u}) {
            const auto r = completeness_experiment(spec, k, {Family::fsm, k, 20, rng.below(1u << 30)});
            for (const auto& o : r.outcomes) {
                c.expect(o.in_domain, "generated mutant outside the domain");
                ++mutants;
                killed += o.killed_by.has_value();
                equivalent += o.oracle == OracleVerdict::equivalent;
            }
            c.expect(r.in_domain_survivors() == 0, "in-domain inequivalent survivor");
            c.expect(r.outcomes.size() == 20, "mutant count");
        }
    }
    return c.done("400 experiments, " + std::to_string(mutants) + " in-domain mutants, " + std::to_string(killed) +
                  " killed, " + std::to_string(equivalent) + " equivalent, 0 inequivalent survivors");
}

Outcome wa_example() {
    Check c;
    const Wa spec = fixture::wa("binary.wa");
    const Wa impl = fixture::wa("binary_faulty.wa");
    const auto& ab = spec.alphabet();
    for (const auto& w : oracle::words_upto(2, 6))
        c.expect(wa_lang(spec, w) == Rat(oracle::binary_value(w)), "binary value of " + format_word(ab, w));
    const Suite eb = suite(ab, {"-eps-", "b"});
    c.expect(Suite(ab, forward_basis(spec).witnesses) == eb, "forward witnesses");
    c.expect(Suite(ab, backward_basis(spec).witnesses) == eb, "backward witnesses");
    c.expect(is_minimal_wa(spec), "minimality");
    c.expect(in_fault_domain_wa(impl, eb, 1), "fault domain");
    std::string detail;
    std::size_t fails = 0;
    for (const auto& v : agree_on_wa(spec, impl, w_suite(eb, ab, 1, eb))) {
        if (v.pass) continue;
        ++fails;
        detail = format_word(ab, v.word) + ": " + v.spec_out + " vs " + v.impl_out;
    }
    c.expect(fails == 1 && detail == "baab: 9 vs 13", "W1 failures");
    return c.done("127 words checked, W1 fails only on " + detail);
}

Outcome wa_completeness() {
    Check c;
    Rng rng(2002);
    std::size_t mutants = 0, killed = 0, equivalent = 0;
    for (int s = 0; s < 100; ++s) {
        const Wa spec = gen::minimal_wa(rng, 1 + rng.below(4), 1 + rng.below(2));
        for (std::size_t k : {0u, 1u}) {
            const auto r = completeness_experiment(spec, k, {Family::wa, k, 10, rng.below(1u << 30)});
            for (const auto& o : r.outcomes) {
                c.expect(o.in_domain, "generated mutant outside the domain");
                ++mutants;
                killed += o.killed_by.has_value();
                equivalent += o.oracle == OracleVerdict::equivalent;
            }
            c.expect(r.in_domain_survivors() == 0, "suite-passing inequivalent mutant");
        }
    }
    c.expect(mutants > 0, "no mutants generated");
    return c.done("200 experiments, " + std::to_string(mutants) + " in-domain mutants, " + std::to_string(killed) +
                  " killed, " + std::to_string(equivalent) + " equivalent, 0 inequivalent survivors");
}

Outcome nominal_example() {
    Check c;
    const Rna a = fixture::rna("aa.rna");
    std::vector<std::string> accepted;
    for (const auto& p : patterns_upto(3))
        if (symbolic_run(a, p).accepting) accepted.push_back(format_pattern(p));
    c.expect(accepted == std::vector<std::string>{"[1,1]"}, "accepted patterns");

    const OrbitSuite p({pat({}), pat({1}), pat({1, 1}), pat({1, 1, 1}), pat({1, 1, 2})});
    RnaCoverMap d;
    d[{pat({}), std::nullopt}] = {1};
    d[{pat({1}), 1}] = {1, 1};
    d[{pat({1}), std::nullopt}] = {1, 1, 2};
    d[{pat({1, 1}), 1}] = {1, 1, 1};
    d[{pat({1, 1}), std::nullopt}] = {1, 1, 2};
    d[{pat({1, 1, 1}), 1}] = {1, 1, 1};
    d[{pat({1, 1, 1}), std::nullopt}] = {1, 1, 1};
    for (std::optional<std::uint32_t> ch : {std::optional<std::uint32_t>(1), std::optional<std::uint32_t>(2),
                                            std::optional<std::uint32_t>()})
        d[{pat({1, 1, 2}), ch}] = {1, 1, 2};
    c.expect(verify_weak_cover_rna(a, p, d), "weak state cover");

    const OrbitSuite w({pat({}), pat({1}), pat({1, 1})});
    c.expect(is_char_set_rna(a, w), "characterization set");
    const OrbitSuite t = w_suite_rna(p, 0, w);
    c.expect(t.max_length() == 6, "suite length");
    const auto fmt = [](const SymbolicWord& s) { return format_pattern(s); };
    const auto ff = failing(agree_on_rna(a, fixture::rna("aa_flipped.rna"), t), fmt);
    const auto fr = failing(agree_on_rna(a, fixture::rna("aa_retarget.rna"), t), fmt);
    c.expect(!ff.empty(), "flipped mutant survives");
    c.expect(!fr.empty(), "retarget mutant survives");
    return c.done("|W0|=" + std::to_string(t.size()) + " patterns, max length " + std::to_string(t.max_length()) +
                  ", flipped killed by " + ff[0] + ", retarget killed by " + fr[0]);
}

Outcome oracle_cross_validation() {
    Check c;
    Rng rng(3003);
    std::size_t eq[3] = {0, 0, 0}, beyond = 0;
    for (int i = 0; i < 500; ++i) {
        const auto kind = static_cast<FsmKind>(rng.below(3));
        const std::size_t n = 1 + rng.below(5), nsym = 1 + rng.below(3);
        const Fsm a = gen::fsm(rng, kind, n, nsym);
        Fsm b = rng.coin() ? gen::fsm(rng, kind, 1 + rng.below(5), nsym)
                           : a.with_transition(static_cast<State>(rng.below(n)), static_cast<Symbol>(rng.below(nsym)),
                                               static_cast<State>(rng.below(n)));
        const auto r = equiv(a, b);
        const auto brute = oracle::fsm_differ(a, b, 2 * std::max(a.n_states(), b.n_states()));
        c.expect(r.equivalent == !brute.has_value(), "fsm verdict");
        if (brute) c.expect(r.counterexample && r.counterexample->size() == brute->size(), "fsm counterexample length");
        eq[0] += r.equivalent;
    }
    for (int i = 0; i < 500; ++i) {
        const std::size_t dim = 1 + rng.below(3), nsym = 1 + rng.below(2);
        const Wa a = gen::wa(rng, dim, nsym);
        const Wa b = rng.coin() ? gen::wa(rng, 1 + rng.below(3), nsym) : minimize_wa(a);
        const auto r = equiv_wa(a, b);
        const auto brute = oracle::wa_differ(a, b, 2 * std::max(a.dim(), b.dim()));
        c.expect(r.equivalent == !brute.has_value(), "wa verdict");
        if (brute) c.expect(r.counterexample && r.counterexample->size() == brute->size(), "wa counterexample length");
        eq[1] += r.equivalent;
    }
    for (int i = 0; i < 500; ++i) {
        const Rna a = gen::rna(rng, 1 + rng.below(4), 2);
        const Rna b = rng.coin() ? gen::rna(rng, 1 + rng.below(4), 2)
                                 : a.with_accepting(rng.below(a.n_locations()), rng.coin());
        const auto r = equiv_rna(a, b);
        c.expect(!r.exhausted, "rna exploration limit");
        const auto brute = oracle::rna_differ(a, b, 2 * std::max(a.n_locations(), b.n_locations()));
        if (brute) c.expect(!r.equivalent, "rna verdict (missed difference)");
        if (r.equivalent) c.expect(!brute, "rna verdict (spurious equivalence)");
        if (r.counterexample) {
            const auto word = oracle::atoms_of(r.counterexample->labels());
            c.expect(oracle::rna_accepts(a, word) != oracle::rna_accepts(b, word), "rna counterexample");
            if (brute) c.expect(r.counterexample->size() <= brute->size(), "rna counterexample length");
            else ++beyond;
        }
        eq[2] += r.equivalent;
    }
    std::ostringstream d;
    d << "3x500 pairs, equivalent fsm/wa/rna = " << eq[0] << "/" << eq[1] << "/" << eq[2];
    if (beyond > 0) d << ", " << beyond << " rna counterexamples beyond the brute-force bound verified directly";
    return c.done(d.str());
}

Outcome factorization() {
    Check c;
    Rng rng(4004);
    std::size_t disagreeing = 0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t nsym = 1 + rng.below(3);
        const Fsm spec = gen::fsm(rng, FsmKind::dfa, 1 + rng.below(4), nsym);
        const Fsm impl = gen::fsm(rng, FsmKind::dfa, 1 + rng.below(4), nsym);
        const auto pool = oracle::words_upto(nsym, 3);
        std::vector<Word> words;
        for (std::size_t j = 0, len = 1 + rng.below(12); j < len; ++j) words.push_back(pool[rng.below(pool.size())]);
        for (std::size_t j = 0, dups = 1 + rng.below(6); j < dups; ++j) words.push_back(words[rng.below(words.size())]);
        const bool raw = all_pass(agree_on(spec, impl, std::span<const Word>(words)));
        const bool dedup = all_pass(agree_on(spec, impl, Suite(spec.alphabet(), words)));
        c.expect(raw == dedup, "fsm verdicts differ");
        disagreeing += !raw;

        const Wa sa = gen::wa(rng, 1 + rng.below(3), nsym), ia = gen::wa(rng, 1 + rng.below(3), nsym);
        c.expect(all_pass(agree_on_wa(sa, ia, std::span<const Word>(words))) ==
                     all_pass(agree_on_wa(sa, ia, Suite(sa.alphabet(), words))),
                 "wa verdicts differ");

        const Rna sr = gen::rna(rng, 1 + rng.below(3), 2), ir = gen::rna(rng, 1 + rng.below(3), 2);
        const auto pats = patterns_upto(3);
        std::vector<SymbolicWord> ps;
        for (std::size_t j = 0, len = 1 + rng.below(8); j < len; ++j) ps.push_back(pats.patterns()[rng.below(pats.size())]);
        for (std::size_t j = 0, dups = 1 + rng.below(4); j < dups; ++j) ps.push_back(ps[rng.below(ps.size())]);
        c.expect(all_pass(agree_on_rna(sr, ir, std::span<const SymbolicWord>(ps))) ==
                     all_pass(agree_on_rna(sr, ir, OrbitSuite(ps))),
                 "rna verdicts differ");
    }
    return c.done("100 suites per family with injected duplicates, " + std::to_string(disagreeing) +
                  " fsm suites failing, verdicts identical after deduplication");
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"coffee-dfa", 1, coffee_dfa},
        {"coffee-moore", 1, coffee_moore},
        {"dfa-completeness", 60, dfa_completeness},
        {"wa-example", 1, wa_example},
        {"wa-completeness", 120, wa_completeness},
        {"nominal-example", 2, nominal_example},
        {"oracle-cross-validation", 120, oracle_cross_validation},
        {"factorization", 0, factorization},
    };
    int failures = 0;
    for (const auto& cr : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = cr.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = cr.limit_s <= 0 || secs < cr.limit_s;
        const bool pass = o.ok && in_time;
        failures += !pass;
        char timing[64];
        if (cr.limit_s > 0) std::snprintf(timing, sizeof timing, "%.3fs < %gs", secs, cr.limit_s);
        else std::snprintf(timing, sizeof timing, "%.3fs", secs);
        std::cout << (pass ? "PASS " : "FAIL ") << cr.name << " [" << timing << "] "
                  << (in_time ? o.detail : o.detail + "; over the time limit") << '\n';
    }
    return failures == 0 ? 0 : 1;
}
