#pragma once

// Mutant generation inside the W-method fault domains and empirical
// completeness experiments against the exact equivalence oracles.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "wmethod/fsm.hpp"
#include "wmethod/nominal.hpp"
#include "wmethod/weighted.hpp"

namespace wmethod {

enum class Family { fsm, wa, rna };

const char* to_string(Family f);

struct MutationSpec {
    Family family = Family::fsm;
    std::size_t max_extra_states = 0;  // k
    std::size_t n_mutants = 0;
    std::uint64_t seed = 0;
};

/// Deterministic draws on top of mt19937_64 (whose output sequence is fixed by
/// the standard, unlike the std distributions).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);
    bool coin() { return below(2) == 1; }

private:
    std::mt19937_64 engine_;
};

/// Mutants with at most n+k states: redirected transitions, altered outputs,
/// and up to k added states with random rows.
std::vector<Fsm> gen_mutants_fsm(const Fsm& spec, const MutationSpec& ms);

/// Single-entry perturbations and appended states, filtered to the fault
/// domain of `p` (P·Σ^{≤k} spans the mutant). At most 100·n_mutants attempts.
std::vector<Wa> gen_mutants_wa(const Wa& spec, const Suite& p, const MutationSpec& ms);

/// Accepting-bit flips and retargeted rules, filtered to mutants for which
/// P·A^{≤k} is a weak state cover. At most 100·n_mutants attempts.
std::vector<Rna> gen_mutants_rna(const Rna& spec, const OrbitSuite& p, const MutationSpec& ms);

enum class OracleVerdict { equivalent, inequivalent, timeout };

struct MutantOutcome {
    std::size_t index = 0;
    bool in_domain = false;
    std::optional<std::string> killed_by;
    OracleVerdict oracle = OracleVerdict::inequivalent;
};

struct ExperimentReport {
    Family family = Family::fsm;
    std::uint64_t seed = 0;
    std::size_t k = 0;
    std::size_t suite_size = 0;
    std::vector<MutantOutcome> outcomes;

    /// In-domain mutants that pass the suite yet differ from the spec.
    std::size_t in_domain_survivors() const;
    std::size_t timeouts() const;
    bool passed() const { return in_domain_survivors() == 0 && timeouts() == 0; }

    /// Line-oriented, diff-stable rendering.
    std::string render() const;
};

/// Builds W_k(P, W) from the spec's state cover and characterization set,
/// runs every generated mutant plus `extra` (hand-made fixtures, appended after
/// the generated ones), and checks each against the equivalence oracle.
ExperimentReport completeness_experiment(const Fsm& spec, std::size_t k, const MutationSpec& ms,
                                         std::span<const Fsm> extra = {});
ExperimentReport completeness_experiment(const Wa& spec, std::size_t k, const MutationSpec& ms,
                                         std::span<const Wa> extra = {});
ExperimentReport completeness_experiment(const Rna& spec, std::size_t k, const MutationSpec& ms,
                                         std::span<const Rna> extra = {});

} // namespace wmethod
