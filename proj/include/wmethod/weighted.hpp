#pragma once

// Weighted automata over the rationals.
//
// A weighted automaton recognizes L(w) = fᵀ M(w) s0 where M(ε) = I and
// M(wa) = M(a) M(w). Column index of M(a) is the source state, row index the target.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wmethod/rational.hpp"
#include "wmethod/words.hpp"

namespace wmethod {

class Wa {
public:
    /// One dim×dim matrix per alphabet symbol. dim 0 is allowed (the zero
    /// language) so that minimization is closed.
    Wa(Alphabet alphabet, std::size_t dim, RatVec s0, std::vector<RatMatrix> matrices, RatVec f);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t dim() const noexcept { return dim_; }
    const RatVec& initial() const noexcept { return s0_; }
    const RatVec& final() const noexcept { return f_; }
    const RatMatrix& matrix(Symbol a) const { return matrices_.at(a); }
    const std::vector<RatMatrix>& matrices() const noexcept { return matrices_; }

    /// Weight of the transition from `from` to `to` on `a`, i.e. M(a)[to][from].
    const Rat& weight(std::size_t from, Symbol a, std::size_t to) const { return matrices_.at(a)(to, from); }

    bool operator==(const Wa&) const = default;

private:
    Alphabet alphabet_;
    std::size_t dim_;
    RatVec s0_;
    std::vector<RatMatrix> matrices_;
    RatVec f_;
};

/// Linearly independent vectors with the words that produced them.
struct VecSpaceBasis {
    std::vector<RatVec> vectors;
    std::vector<Word> witnesses;

    std::size_t rank() const noexcept { return vectors.size(); }
};

/// M(w) s.
RatVec wa_state(const Wa& a, const RatVec& s, const Word& w);

/// fᵀ M(w) s0.
Rat wa_lang(const Wa& a, const Word& w);
/// fᵀ M(w) s for an arbitrary input vector s.
Rat wa_lang_from(const Wa& a, const RatVec& s, const Word& w);

/// Span of { M(w) s0 }: BFS over words, keeping vectors that raise the rank.
/// Witnesses are prefix-closed and appear in shortlex order.
VecSpaceBasis forward_basis(const Wa& a);

/// Span of the observation rows { fᵀ M(w) }. Rows are extended on the left of
/// the word (fᵀ M(w) M(a) = fᵀ M(a·w)), so witnesses are suffix-closed.
VecSpaceBasis backward_basis(const Wa& a);

/// ε in p and { M(w) s0 | w in p } spans the whole state space.
bool is_state_cover_wa(const Wa& a, const Suite& p);

/// ε in w and the rows { fᵀ M(v) | v in w } span the observation space.
bool is_char_set_wa(const Wa& a, const Suite& w);

/// s ↦ L[s] is injective.
bool is_minimal_wa(const Wa& a);

/// Forward (reachability) reduction followed by backward (observability) reduction.
Wa minimize_wa(const Wa& a);

struct WaEquivResult {
    bool equivalent = true;
    std::optional<Word> counterexample;
};

/// Exact equivalence on the difference automaton. The counterexample, when
/// present, has minimal length.
WaEquivResult equiv_wa(const Wa& a, const Wa& b);

std::vector<Verdict> agree_on_wa(const Wa& spec, const Wa& impl, std::span<const Word> words);
std::vector<Verdict> agree_on_wa(const Wa& spec, const Wa& impl, const Suite& t);

/// impl is in the fault domain of P and k iff P·Σ^{≤k} is a state cover for impl.
bool in_fault_domain_wa(const Wa& impl, const Suite& p, std::size_t k);

} // namespace wmethod
