#pragma once

// Deterministic finite automata, Moore machines and Mealy machines.
//
// The three kinds share one representation. A DFA is a Moore machine whose
// outputs are "0"/"1". The language value of a Mealy machine at a word w is the
// whole output row a -> λ(δ*(q0, w), a), i.e. the output of the *last*
// transition for every possible next input.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wmethod/words.hpp"

namespace wmethod {

using State = std::uint32_t;

enum class FsmKind { dfa, moore, mealy };

const char* to_string(FsmKind kind);

/// Output row of a state: one entry for dfa/moore, |Σ| entries for mealy.
struct FsmValue {
    std::vector<std::string> outputs;

    bool operator==(const FsmValue&) const = default;
    std::string str() const;
};

class Fsm {
public:
    /// `delta` is row-major n_states × |Σ|. `outputs` has n_states entries
    /// (dfa/moore) or n_states × |Σ| entries (mealy). Throws MismatchError
    /// when the tables are inconsistent or a DFA output is not 0/1.
    Fsm(FsmKind kind, Alphabet alphabet, std::size_t n_states, State initial,
        std::vector<State> delta, std::vector<std::string> outputs);

    FsmKind kind() const noexcept { return kind_; }
    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t n_states() const noexcept { return n_states_; }
    State initial() const noexcept { return initial_; }

    State next(State q, Symbol a) const { return delta_[index(q, a)]; }
    /// Moore/DFA output of q. Not meaningful for mealy machines.
    const std::string& state_output(State q) const { return outputs_[q]; }
    /// Mealy output λ(q, a).
    const std::string& transition_output(State q, Symbol a) const { return outputs_[index(q, a)]; }
    FsmValue row(State q) const;

    const std::vector<State>& delta_table() const noexcept { return delta_; }
    const std::vector<std::string>& output_table() const noexcept { return outputs_; }

    Fsm with_transition(State q, Symbol a, State target) const;
    Fsm with_state_output(State q, std::string value) const;
    Fsm with_transition_output(State q, Symbol a, std::string value) const;

    bool operator==(const Fsm&) const = default;

private:
    std::size_t index(State q, Symbol a) const { return static_cast<std::size_t>(q) * alphabet_.size() + a; }

    FsmKind kind_;
    Alphabet alphabet_;
    std::size_t n_states_;
    State initial_;
    std::vector<State> delta_;
    std::vector<std::string> outputs_;
};

/// δ*(q0, w).
State run(const Fsm& m, const Word& w);
State run_from(const Fsm& m, State q, const Word& w);

/// L(w): the output row at δ*(q0, w).
FsmValue lang_value(const Fsm& m, const Word& w);

/// Traditional Mealy output trace λ*(q0, w): one output per input symbol.
std::vector<std::string> output_trace(const Fsm& m, const Word& w);

/// States reachable from the initial state.
std::vector<bool> reachable_states(const Fsm& m);

/// Equivalence classes of states (Moore partition refinement). Block ids are
/// dense and assigned by first occurrence in state order.
std::vector<std::size_t> state_equivalence(const Fsm& m);

bool is_minimal(const Fsm& m);

/// Drops unreachable states and merges equivalent ones. States of the result
/// are numbered in BFS order from the initial state, so the result is canonical.
Fsm minimize(const Fsm& m);

/// BFS-shortest access sequences with alphabet-order tie breaking, ε included.
/// Throws PreconditionError naming the first unreachable state.
Suite state_cover(const Fsm& m);

/// Characterization set: ε plus a greedy cover of all state pairs by shortest
/// separating words. Throws PreconditionError when m is not minimal.
Suite char_set(const Fsm& m);

/// True iff every pair of inequivalent states is separated by some word of w.
bool is_char_set(const Fsm& m, const Suite& w);

/// δ_P: maps (w, a) for w in P to a word of P.
using CoverMap = std::map<std::pair<Word, Symbol>, Word>;

/// Builds δ_P by picking, for every (w, a), the first word of p that reaches
/// δ*(q0, wa). Returns nullopt when p is not closed in that sense.
std::optional<CoverMap> find_cover_map(const Fsm& m, const Suite& p);

/// Checks the weak state cover square δ*(q0, δ_P(w, a)) = δ*(q0, w·a).
bool verify_weak_cover(const Fsm& m, const Suite& p, const CoverMap& delta_p);

/// One verdict per word, in input order.
std::vector<Verdict> agree_on(const Fsm& spec, const Fsm& impl, std::span<const Word> words);
std::vector<Verdict> agree_on(const Fsm& spec, const Fsm& impl, const Suite& t);

struct EquivResult {
    bool equivalent = true;
    std::optional<Word> counterexample;
};

/// Exact language equivalence; on failure returns a shortest distinguishing word.
EquivResult equiv(const Fsm& a, const Fsm& b);

} // namespace wmethod
