#pragma once

// Deterministic nominal automata over equality atoms, in register form.
//
// A location of arity r stands for the orbit of states supported by r distinct
// atoms; a concrete state is a location plus an injective register tuple. Every
// location has exactly r+1 guarded rules: "input equals register i" for each i,
// and "input is fresh". Since runs are equivariant, acceptance only depends on
// the equality pattern of the input word, which is what SymbolicWord records.

#include <compare>
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

struct Atom {
    std::uint64_t id = 0;

    friend bool operator==(Atom, Atom) = default;
    friend auto operator<=>(Atom, Atom) = default;
};

using AtomWord = std::vector<Atom>;

/// Source of a target register: a register index of the source location
/// (0-based) or the input atom.
using RegSource = std::int32_t;
inline constexpr RegSource kFromInput = -1;

struct RnaLocation {
    std::string name;
    std::size_t arity = 0;

    bool operator==(const RnaLocation&) const = default;
};

struct RnaRule {
    std::size_t target = 0;
    std::vector<RegSource> assignment;  // one entry per register of `target`

    bool operator==(const RnaRule&) const = default;
};

class Rna {
public:
    /// rules[l] holds arity(l)+1 rules: index i < arity is the guard
    /// "input = register i", index arity is the fresh guard.
    Rna(std::vector<RnaLocation> locations, std::size_t initial, std::vector<bool> accepting,
        std::vector<std::vector<RnaRule>> rules);

    std::size_t n_locations() const noexcept { return locations_.size(); }
    const RnaLocation& location(std::size_t l) const { return locations_.at(l); }
    const std::vector<RnaLocation>& locations() const noexcept { return locations_; }
    std::size_t initial() const noexcept { return initial_; }
    bool accepting(std::size_t l) const { return accepting_.at(l); }
    const std::vector<bool>& accepting_set() const noexcept { return accepting_; }
    const std::vector<std::vector<RnaRule>>& rules() const noexcept { return rules_; }

    /// Rule for guard "input = register reg", or the fresh rule when reg is nullopt.
    const RnaRule& rule(std::size_t l, std::optional<std::size_t> reg) const;

    std::optional<std::size_t> find_location(const std::string& name) const;

    Rna with_accepting(std::size_t l, bool value) const;
    Rna with_rule(std::size_t l, std::optional<std::size_t> reg, RnaRule rule) const;

    bool operator==(const Rna&) const = default;

private:
    std::vector<RnaLocation> locations_;
    std::size_t initial_;
    std::vector<bool> accepting_;
    std::vector<std::vector<RnaRule>> rules_;
};

/// A concrete state.
struct RnaConfig {
    std::size_t location = 0;
    std::vector<Atom> registers;

    bool operator==(const RnaConfig&) const = default;
};

RnaConfig rna_step(const Rna& a, const RnaConfig& c, Atom x);
RnaConfig rna_run(const Rna& a, std::span<const Atom> w);
RnaConfig rna_run_from(const Rna& a, RnaConfig c, std::span<const Atom> w);

/// Equality pattern of a data word: position i carries the label of its class,
/// classes numbered 1.. in order of first occurrence.
class SymbolicWord {
public:
    SymbolicWord() = default;
    /// Throws MismatchError unless `labels` is already canonical.
    explicit SymbolicWord(std::vector<std::uint32_t> labels);

    /// Canonical pattern of any sequence compared by equality.
    template <class T>
    static SymbolicWord of(std::span<const T> items) {
        std::vector<T> seen;
        std::vector<std::uint32_t> labels;
        labels.reserve(items.size());
        for (const auto& x : items) {
            std::uint32_t label = 0;
            for (std::size_t i = 0; i < seen.size(); ++i)
                if (seen[i] == x) label = static_cast<std::uint32_t>(i + 1);
            if (label == 0) {
                seen.push_back(x);
                label = static_cast<std::uint32_t>(seen.size());
            }
            labels.push_back(label);
        }
        SymbolicWord s;
        s.labels_ = std::move(labels);
        s.classes_ = seen.size();
        return s;
    }

    const std::vector<std::uint32_t>& labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return labels_.size(); }
    bool empty() const noexcept { return labels_.empty(); }
    std::size_t classes() const noexcept { return classes_; }

    friend bool operator==(const SymbolicWord& a, const SymbolicWord& b) { return a.labels_ == b.labels_; }
    /// Length first, then lexicographic on labels.
    friend std::strong_ordering operator<=>(const SymbolicWord& a, const SymbolicWord& b);

private:
    std::vector<std::uint32_t> labels_;
    std::size_t classes_ = 0;
};

SymbolicWord pattern_of(std::span<const Atom> w);

/// Canonical representative: class i becomes Atom{i}.
AtomWord instantiate(const SymbolicWord& s);

/// `[1,1,2]`, or `-eps-` for the empty pattern.
std::string format_pattern(const SymbolicWord& s);

struct SymbolicRunResult {
    std::size_t location = 0;
    bool accepting = false;
};

SymbolicRunResult symbolic_run(const Rna& a, const SymbolicWord& s);

/// Finite set of patterns, i.e. an orbit-finite set of data words.
class OrbitSuite {
public:
    OrbitSuite() = default;
    explicit OrbitSuite(std::vector<SymbolicWord> patterns);

    const std::vector<SymbolicWord>& patterns() const noexcept { return patterns_; }
    std::size_t size() const noexcept { return patterns_.size(); }
    bool contains(const SymbolicWord& s) const;
    bool contains_epsilon() const { return contains(SymbolicWord{}); }
    std::size_t max_length() const;

    auto begin() const noexcept { return patterns_.begin(); }
    auto end() const noexcept { return patterns_.end(); }

    bool operator==(const OrbitSuite&) const = default;

private:
    std::vector<SymbolicWord> patterns_;
};

using OrbitVerdict = BasicVerdict<SymbolicWord>;

/// Every pattern of length at most k (the orbits of A^{≤k}).
OrbitSuite patterns_upto(std::size_t k);

/// Orbit decomposition of { u·v }: every way of identifying classes of v with
/// classes of u (injectively) or keeping them fresh.
OrbitSuite concat_orbit(const OrbitSuite& a, const OrbitSuite& b);

/// P · A^{≤k+1} · W on orbits.
OrbitSuite w_suite_rna(const OrbitSuite& p, std::size_t k, const OrbitSuite& w);

OrbitSuite prefix_close_orbit(const OrbitSuite& t);

/// Extension of a pattern by one letter: equal to class `i` (1-based) or fresh (nullopt).
using LetterChoice = std::optional<std::uint32_t>;

SymbolicWord extend(const SymbolicWord& w, LetterChoice c);

/// The choices available after w: every class of w, then fresh.
std::vector<LetterChoice> letter_choices(const SymbolicWord& w);

/// δ_P on orbits. The value for (w, c) is a word written with the class labels
/// of extend(w, c), so it is equivariant by construction; its pattern must lie in P.
using RnaCoverMap = std::map<std::pair<SymbolicWord, LetterChoice>, std::vector<std::uint32_t>>;

/// Applies an orbit-level δ_P to a concrete word of P and a concrete letter.
AtomWord apply_cover_map(const RnaCoverMap& delta_p, std::span<const Atom> w, Atom c);

/// Checks δ*(q0, δ_P(w, c)) = δ*(q0, w·c) (same location and same registers)
/// for every w in p and every choice c. Throws PreconditionError when δ_P is
/// not total on p or a value falls outside p.
bool verify_weak_cover_rna(const Rna& a, const OrbitSuite& p, const RnaCoverMap& delta_p);

/// Searches a δ_P for p (values drawn from p, supports within supp(w·c)).
std::optional<RnaCoverMap> find_cover_map_rna(const Rna& a, const OrbitSuite& p);

struct RnaWeakCover {
    OrbitSuite p;
    RnaCoverMap delta_p;
};

/// Greedy weak state cover: grows P from ε until every one-letter extension
/// can be redirected into P. Throws Error if P exceeds `max_patterns`.
RnaWeakCover weak_cover_rna(const Rna& a, std::size_t max_patterns = 4096);

std::vector<bool> reachable_locations(const Rna& a);

/// Reachable, and no two distinct concrete states accept the same language.
bool is_minimal_rna(const Rna& a);

/// Characterization set: every pair of inequivalent states is separated by
/// some instance of some pattern. Throws PreconditionError if a is not minimal.
OrbitSuite char_set_rna(const Rna& a);

bool is_char_set_rna(const Rna& a, const OrbitSuite& w);

std::vector<OrbitVerdict> agree_on_rna(const Rna& spec, const Rna& impl, std::span<const SymbolicWord> patterns);
std::vector<OrbitVerdict> agree_on_rna(const Rna& spec, const Rna& impl, const OrbitSuite& t);

struct RnaEquivResult {
    bool equivalent = true;
    std::optional<SymbolicWord> counterexample;
    /// Exploration stopped at the configuration limit; no verdict.
    bool exhausted = false;
};

/// Symbolic product exploration over (location, location, register matching).
RnaEquivResult equiv_rna(const Rna& a, const Rna& b, std::size_t max_configs = 1'000'000);

} // namespace wmethod
