#pragma once

// Random machines for property tests.

#include <string>
#include <vector>

#include "oracles.hpp"
#include "wmethod/faultsim.hpp"
#include "wmethod/fsm.hpp"
#include "wmethod/nominal.hpp"
#include "wmethod/weighted.hpp"

namespace gen {

using namespace wmethod;

inline Alphabet alphabet(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    return Alphabet(names);
}

inline Fsm fsm(Rng& rng, FsmKind kind, std::size_t n, std::size_t nsym, std::size_t n_outputs = 2) {
    std::vector<State> delta;
    for (std::size_t i = 0; i < n * nsym; ++i) delta.push_back(static_cast<State>(rng.below(n)));
    std::vector<std::string> out;
    const std::size_t count = kind == FsmKind::mealy ? n * nsym : n;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(kind == FsmKind::dfa ? std::to_string(rng.below(2)) : "o" + std::to_string(rng.below(n_outputs)));
    return Fsm(kind, alphabet(nsym), n, 0, std::move(delta), std::move(out));
}

/// Rejection-samples a minimal machine with exactly n states.
inline Fsm minimal_fsm(Rng& rng, FsmKind kind, std::size_t n, std::size_t nsym) {
    for (;;) {
        Fsm m = fsm(rng, kind, n, nsym, n);
        if (oracle::fsm_minimal(m)) return m;
    }
}

inline Rat small_rat(Rng& rng) {
    static const int nums[] = {0, 0, 0, 1, -1, 2, 1, 3};
    static const int dens[] = {1, 1, 1, 1, 1, 1, 2, 2};
    std::size_t i = rng.below(8);
    return Rat(nums[i], dens[i]);
}

inline Wa wa(Rng& rng, std::size_t dim, std::size_t nsym) {
    RatVec s0(dim), f(dim);
    for (auto& x : s0) x = small_rat(rng);
    for (auto& x : f) x = small_rat(rng);
    std::vector<RatMatrix> mats;
    for (std::size_t a = 0; a < nsym; ++a) {
        RatMatrix m(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) m(i, j) = small_rat(rng);
        mats.push_back(std::move(m));
    }
    return Wa(alphabet(nsym), dim, std::move(s0), std::move(mats), std::move(f));
}

/// Minimal WA of the requested dimension (rank checked by a Hankel oracle).
inline Wa minimal_wa(Rng& rng, std::size_t dim, std::size_t nsym) {
    for (;;) {
        Wa a = wa(rng, dim, nsym);
        if (oracle::wa_hankel_rank(a, dim) == dim) return a;
    }
}

/// Random register automaton: locations of arity 0..max_arity (initial arity 0)
/// with uniformly chosen targets and injective assignments.
inline Rna rna(Rng& rng, std::size_t n_locations, std::size_t max_arity) {
    std::vector<RnaLocation> locs;
    for (std::size_t l = 0; l < n_locations; ++l)
        locs.push_back({"l" + std::to_string(l), l == 0 ? 0 : static_cast<std::size_t>(rng.below(max_arity + 1))});
    std::vector<bool> acc;
    for (std::size_t l = 0; l < n_locations; ++l) acc.push_back(rng.coin());
    std::vector<std::vector<RnaRule>> rules(n_locations);
    for (std::size_t l = 0; l < n_locations; ++l) {
        const std::size_t r = locs[l].arity;
        for (std::size_t g = 0; g <= r; ++g) {
            std::vector<RegSource> sources;
            for (std::size_t i = 0; i < r; ++i) sources.push_back(static_cast<RegSource>(i));
            if (g == r) sources.push_back(kFromInput);
            std::vector<std::size_t> targets;
            for (std::size_t t = 0; t < n_locations; ++t)
                if (locs[t].arity <= sources.size()) targets.push_back(t);
            RnaRule rule;
            rule.target = targets[rng.below(targets.size())];
            for (std::size_t i = 0; i < locs[rule.target].arity; ++i) {
                std::size_t pick = i + rng.below(sources.size() - i);
                std::swap(sources[i], sources[pick]);
                rule.assignment.push_back(sources[i]);
            }
            rules[l].push_back(std::move(rule));
        }
    }
    return Rna(std::move(locs), 0, std::move(acc), std::move(rules));
}

} // namespace gen
