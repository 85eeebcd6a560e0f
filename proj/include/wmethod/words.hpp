#pragma once

// Words over a finite alphabet and finite, deduplicated test suites.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wmethod {

/// Index of a symbol inside its Alphabet.
using Symbol = std::uint32_t;

/// A finite word; the empty vector is the empty word.
using Word = std::vector<Symbol>;

/// Ordered list of distinct symbol names. Symbols are interned to their position.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);
    Alphabet(std::initializer_list<std::string> names)
        : Alphabet(std::vector<std::string>(names)) {}

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(Symbol s) const { return names_.at(s); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::optional<Symbol> find(std::string_view name) const;
    /// Like find(), but throws MismatchError on unknown names.
    Symbol at(std::string_view name) const;

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<std::string> names_;
};

/// Length-lexicographic order by symbol index.
bool shortlex_less(const Word& a, const Word& b);

/// Parses a word from symbol names; the whole string is split on whitespace.
/// Single-character alphabets also accept the packed form ("11c1").
Word make_word(const Alphabet& alphabet, std::string_view text);

/// Compact rendering: symbols concatenated when every name is one character,
/// dot-separated otherwise; the empty word renders as `-eps-`.
std::string format_word(const Alphabet& alphabet, const Word& w);

inline constexpr std::string_view kEpsilonToken = "-eps-";

/// Finite set of words in canonical (shortlex) order, duplicate-free.
class Suite {
public:
    explicit Suite(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
    Suite(Alphabet alphabet, std::vector<Word> words);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    const std::vector<Word>& words() const noexcept { return words_; }
    std::size_t size() const noexcept { return words_.size(); }
    bool empty() const noexcept { return words_.empty(); }
    bool contains(const Word& w) const;
    bool contains_epsilon() const { return contains(Word{}); }

    auto begin() const noexcept { return words_.begin(); }
    auto end() const noexcept { return words_.end(); }

    bool operator==(const Suite&) const = default;

private:
    Alphabet alphabet_;
    std::vector<Word> words_;
};

/// Outcome of executing one test on specification and implementation.
template <class Input>
struct BasicVerdict {
    Input word;
    std::string spec_out;
    std::string impl_out;
    bool pass = false;
};

using Verdict = BasicVerdict<Word>;

template <class Input>
bool all_pass(std::span<const BasicVerdict<Input>> verdicts) {
    for (const auto& v : verdicts)
        if (!v.pass) return false;
    return true;
}

template <class Input>
bool all_pass(const std::vector<BasicVerdict<Input>>& verdicts) {
    return all_pass(std::span<const BasicVerdict<Input>>(verdicts));
}

/// All words of length at most k, in canonical order.
Suite words_upto(const Alphabet& alphabet, std::size_t k);

/// { u·v | u in a, v in b }, deduplicated.
Suite concat_suites(const Suite& a, const Suite& b);

/// The W-method suite P · Σ^{≤k+1} · W. Both p and w must contain ε.
Suite w_suite(const Suite& p, const Alphabet& alphabet, std::size_t k, const Suite& w);

/// Smallest prefix-closed superset.
Suite prefix_close(const Suite& t);

} // namespace wmethod
