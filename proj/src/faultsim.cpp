#include "wmethod/faultsim.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "wmethod/error.hpp"

namespace wmethod {

const char* to_string(Family f) {
    switch (f) {
    case Family::fsm: return "fsm";
    case Family::wa: return "wa";
    case Family::rna: return "rna";
    }
    return "?";
}

std::uint64_t Rng::below(std::uint64_t n) {
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    for (;;) {
        std::uint64_t x = engine_();
        if (x < limit) return x % n;
    }
}

// ---------------------------------------------------------------------------
// FSM

namespace {

std::vector<std::string> output_values(const Fsm& m) {
    if (m.kind() == FsmKind::dfa) return {"0", "1"};
    std::set<std::string> values(m.output_table().begin(), m.output_table().end());
    return {values.begin(), values.end()};
}

std::string other_value(Rng& rng, const std::vector<std::string>& values, const std::string& current) {
    std::vector<std::string> rest;
    for (const auto& v : values)
        if (v != current) rest.push_back(v);
    if (rest.empty()) return current + "'";
    return rest[rng.below(rest.size())];
}

Fsm random_fsm_mutant(const Fsm& spec, std::size_t k, Rng& rng) {
    const std::size_t n = spec.n_states();
    const std::size_t nsym = spec.alphabet().size();
    const std::size_t extra = k == 0 ? 0 : rng.below(k + 1);
    const std::size_t total = n + extra;
    const auto values = output_values(spec);

    std::vector<State> delta = spec.delta_table();
    std::vector<std::string> outputs = spec.output_table();
    const std::size_t per_state = spec.kind() == FsmKind::mealy ? nsym : 1;
    for (std::size_t q = n; q < total; ++q) {
        for (std::size_t a = 0; a < nsym; ++a) delta.push_back(static_cast<State>(rng.below(total)));
        for (std::size_t i = 0; i < per_state; ++i) outputs.push_back(values[rng.below(values.size())]);
    }
    if (extra > 0) {
        // Make an added state reachable.
        delta[rng.below(n * nsym)] = static_cast<State>(n + rng.below(extra));
    }
    const std::size_t edits = 1 + rng.below(2);
    for (std::size_t e = 0; e < edits; ++e) {
        if (rng.coin()) {
            delta[rng.below(total * nsym)] = static_cast<State>(rng.below(total));
        } else {
            auto& slot = outputs[rng.below(outputs.size())];
            slot = other_value(rng, values, slot);
        }
    }
    return Fsm(spec.kind(), spec.alphabet(), total, spec.initial(), std::move(delta), std::move(outputs));
}

template <class Verdicts, class Format>
std::optional<std::string> first_failure(const Verdicts& verdicts, Format&& format) {
    for (const auto& v : verdicts)
        if (!v.pass) return format(v.word);
    return std::nullopt;
}

} // namespace

std::vector<Fsm> gen_mutants_fsm(const Fsm& spec, const MutationSpec& ms) {
    Rng rng(ms.seed);
    std::vector<Fsm> out;
    out.reserve(ms.n_mutants);
    for (std::size_t i = 0; i < ms.n_mutants; ++i) out.push_back(random_fsm_mutant(spec, ms.max_extra_states, rng));
    return out;
}

ExperimentReport completeness_experiment(const Fsm& spec, std::size_t k, const MutationSpec& ms,
                                         std::span<const Fsm> extra) {
    if (!is_minimal(spec)) throw PreconditionError("completeness_experiment: spec is not minimal");
    const Suite suite = w_suite(state_cover(spec), spec.alphabet(), k, char_set(spec));
    MutationSpec gen = ms;
    gen.max_extra_states = k;
    auto mutants = gen_mutants_fsm(spec, gen);
    mutants.insert(mutants.end(), extra.begin(), extra.end());

    ExperimentReport report{Family::fsm, ms.seed, k, suite.size(), {}};
    for (std::size_t i = 0; i < mutants.size(); ++i) {
        const Fsm& m = mutants[i];
        MutantOutcome o;
        o.index = i;
        o.in_domain = m.n_states() <= spec.n_states() + k;
        o.killed_by = first_failure(agree_on(spec, m, suite), [&](const Word& w) { return format_word(spec.alphabet(), w); });
        o.oracle = equiv(spec, m).equivalent ? OracleVerdict::equivalent : OracleVerdict::inequivalent;
        report.outcomes.push_back(std::move(o));
    }
    return report;
}

// ---------------------------------------------------------------------------
// WA

namespace {

Rat small_nonzero(Rng& rng) {
    static const int nums[] = {1, -1, 2, -2, 1, -1};
    static const int dens[] = {1, 1, 1, 1, 2, 2};
    std::size_t i = rng.below(6);
    return Rat(nums[i], dens[i]);
}

Rat small_value(Rng& rng) { return Rat(static_cast<long>(rng.below(5)) - 2); }

Wa random_wa_mutant(const Wa& spec, std::size_t k, Rng& rng) {
    const std::size_t n = spec.dim();
    const std::size_t nsym = spec.alphabet().size();
    if (k > 0 && rng.below(4) == 0) {
        // Append one state wired in with random small weights.
        RatVec s0 = spec.initial(), f = spec.final();
        s0.push_back(0);
        f.push_back(small_value(rng));
        std::vector<RatMatrix> mats;
        for (Symbol a = 0; a < nsym; ++a) {
            RatMatrix m(n + 1, n + 1);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m(i, j) = spec.matrix(a)(i, j);
            for (std::size_t i = 0; i <= n; ++i) {
                m(n, i) = rng.below(3) == 0 ? small_value(rng) : Rat(0);
                m(i, n) = rng.below(3) == 0 ? small_value(rng) : Rat(0);
            }
            mats.push_back(std::move(m));
        }
        mats[rng.below(nsym)](n, rng.below(n)) = small_nonzero(rng);
        return Wa(spec.alphabet(), n + 1, std::move(s0), std::move(mats), std::move(f));
    }
    RatVec s0 = spec.initial(), f = spec.final();
    std::vector<RatMatrix> mats = spec.matrices();
    const std::size_t where = rng.below(nsym * n * n + 2 * n);
    if (where < nsym * n * n) {
        std::size_t a = where / (n * n), i = (where / n) % n, j = where % n;
        mats[a](i, j) += small_nonzero(rng);
    } else if (where < nsym * n * n + n) {
        s0[where - nsym * n * n] += small_nonzero(rng);
    } else {
        f[where - nsym * n * n - n] += small_nonzero(rng);
    }
    return Wa(spec.alphabet(), n, std::move(s0), std::move(mats), std::move(f));
}

} // namespace

std::vector<Wa> gen_mutants_wa(const Wa& spec, const Suite& p, const MutationSpec& ms) {
    Rng rng(ms.seed);
    std::vector<Wa> out;
    const std::size_t cap = 100 * ms.n_mutants;
    for (std::size_t attempt = 0; attempt < cap && out.size() < ms.n_mutants; ++attempt) {
        Wa m = random_wa_mutant(spec, ms.max_extra_states, rng);
        if (in_fault_domain_wa(m, p, ms.max_extra_states)) out.push_back(std::move(m));
    }
    return out;
}

ExperimentReport completeness_experiment(const Wa& spec, std::size_t k, const MutationSpec& ms,
                                         std::span<const Wa> extra) {
    if (!is_minimal_wa(spec)) throw PreconditionError("completeness_experiment: weighted spec is not minimal");
    auto fwd = forward_basis(spec);
    if (fwd.rank() != spec.dim())
        throw PreconditionError("completeness_experiment: weighted spec is not reachable, it has no state cover");
    const Suite p(spec.alphabet(), fwd.witnesses);
    const Suite w(spec.alphabet(), backward_basis(spec).witnesses);
    const Suite suite = w_suite(p, spec.alphabet(), k, w);

    MutationSpec gen = ms;
    gen.max_extra_states = k;
    auto mutants = gen_mutants_wa(spec, p, gen);
    mutants.insert(mutants.end(), extra.begin(), extra.end());

    ExperimentReport report{Family::wa, ms.seed, k, suite.size(), {}};
    for (std::size_t i = 0; i < mutants.size(); ++i) {
        const Wa& m = mutants[i];
        MutantOutcome o;
        o.index = i;
        o.in_domain = in_fault_domain_wa(m, p, k);
        o.killed_by =
            first_failure(agree_on_wa(spec, m, suite), [&](const Word& x) { return format_word(spec.alphabet(), x); });
        o.oracle = equiv_wa(spec, m).equivalent ? OracleVerdict::equivalent : OracleVerdict::inequivalent;
        report.outcomes.push_back(std::move(o));
    }
    return report;
}

// ---------------------------------------------------------------------------
// RNA

namespace {

std::optional<Rna> random_rna_mutant(const Rna& spec, Rng& rng) {
    const std::size_t nloc = spec.n_locations();
    if (rng.coin()) {
        std::size_t l = rng.below(nloc);
        return spec.with_accepting(l, !spec.accepting(l));
    }
    const std::size_t l = rng.below(nloc);
    const std::size_t r = spec.location(l).arity;
    const std::size_t g = rng.below(r + 1);
    const std::optional<std::size_t> guard = g < r ? std::optional<std::size_t>(g) : std::nullopt;
    RnaRule rule;
    rule.target = rng.below(nloc);
    // Distinct atoms available after reading x: the registers, plus x when it is fresh.
    std::vector<RegSource> sources;
    for (std::size_t i = 0; i < r; ++i) sources.push_back(static_cast<RegSource>(i));
    if (!guard) sources.push_back(kFromInput);
    const std::size_t want = spec.location(rule.target).arity;
    if (want > sources.size()) return std::nullopt;
    for (std::size_t i = 0; i < want; ++i) {
        std::size_t pick = i + rng.below(sources.size() - i);
        std::swap(sources[i], sources[pick]);
        rule.assignment.push_back(sources[i]);
    }
    if (rule == spec.rule(l, guard)) return std::nullopt;
    return spec.with_rule(l, guard, std::move(rule));
}

bool in_fault_domain_rna(const Rna& impl, const OrbitSuite& cover) {
    return find_cover_map_rna(impl, cover).has_value();
}

} // namespace

std::vector<Rna> gen_mutants_rna(const Rna& spec, const OrbitSuite& p, const MutationSpec& ms) {
    Rng rng(ms.seed);
    const OrbitSuite cover = concat_orbit(p, patterns_upto(ms.max_extra_states));
    std::vector<Rna> out;
    const std::size_t cap = 100 * ms.n_mutants;
    for (std::size_t attempt = 0; attempt < cap && out.size() < ms.n_mutants; ++attempt) {
        auto m = random_rna_mutant(spec, rng);
        if (m && in_fault_domain_rna(*m, cover)) out.push_back(std::move(*m));
    }
    return out;
}

ExperimentReport completeness_experiment(const Rna& spec, std::size_t k, const MutationSpec& ms,
                                         std::span<const Rna> extra) {
    if (!is_minimal_rna(spec)) throw PreconditionError("completeness_experiment: nominal spec is not minimal");
    const OrbitSuite p = weak_cover_rna(spec).p;
    const OrbitSuite suite = w_suite_rna(p, k, char_set_rna(spec));
    const OrbitSuite cover = concat_orbit(p, patterns_upto(k));

    MutationSpec gen = ms;
    gen.max_extra_states = k;
    auto mutants = gen_mutants_rna(spec, p, gen);
    mutants.insert(mutants.end(), extra.begin(), extra.end());

    ExperimentReport report{Family::rna, ms.seed, k, suite.size(), {}};
    for (std::size_t i = 0; i < mutants.size(); ++i) {
        const Rna& m = mutants[i];
        MutantOutcome o;
        o.index = i;
        o.in_domain = in_fault_domain_rna(m, cover);
        o.killed_by = first_failure(agree_on_rna(spec, m, suite), [](const SymbolicWord& s) { return format_pattern(s); });
        auto eq = equiv_rna(spec, m);
        o.oracle = eq.exhausted ? OracleVerdict::timeout
                   : eq.equivalent ? OracleVerdict::equivalent
                                   : OracleVerdict::inequivalent;
        report.outcomes.push_back(std::move(o));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Report

std::size_t ExperimentReport::in_domain_survivors() const {
    return static_cast<std::size_t>(std::count_if(outcomes.begin(), outcomes.end(), [](const MutantOutcome& o) {
        return o.in_domain && !o.killed_by && o.oracle == OracleVerdict::inequivalent;
    }));
}

std::size_t ExperimentReport::timeouts() const {
    return static_cast<std::size_t>(std::count_if(outcomes.begin(), outcomes.end(),
                                                  [](const MutantOutcome& o) { return o.oracle == OracleVerdict::timeout; }));
}

std::string ExperimentReport::render() const {
    std::ostringstream out;
    out << "# faultsim family=" << to_string(family) << " k=" << k << " seed=" << seed << " suite=" << suite_size
        << '\n';
    std::size_t in_domain = 0, killed = 0, out_survivors = 0;
    for (const auto& o : outcomes) {
        out << "mutant " << o.index << ' ' << (o.in_domain ? "in-domain" : "out-domain") << ' ';
        if (o.killed_by) out << "killed-by " << *o.killed_by;
        else out << "survived";
        out << " oracle "
            << (o.oracle == OracleVerdict::equivalent     ? "equiv"
                : o.oracle == OracleVerdict::inequivalent ? "inequiv"
                                                          : "timeout")
            << '\n';
        in_domain += o.in_domain;
        killed += o.killed_by.has_value();
        out_survivors += !o.in_domain && !o.killed_by && o.oracle == OracleVerdict::inequivalent;
    }
    out << "summary mutants=" << outcomes.size() << " in-domain=" << in_domain << " killed=" << killed
        << " in-domain-survivors=" << in_domain_survivors() << " out-domain-survivors=" << out_survivors
        << " timeouts=" << timeouts() << " result=" << (passed() ? "PASS" : "FAIL") << '\n';
    return out.str();
}

} // namespace wmethod
