#include "wmethod/words.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "wmethod/error.hpp"

namespace wmethod {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw MismatchError("alphabet must be nonempty");
    std::set<std::string_view> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw MismatchError("alphabet symbol names must be nonempty");
        if (!seen.insert(n).second) throw MismatchError("duplicate alphabet symbol '" + n + "'");
    }
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<Symbol>(it - names_.begin());
}

Symbol Alphabet::at(std::string_view name) const {
    if (auto s = find(name)) return *s;
    throw MismatchError("symbol '" + std::string(name) + "' is not in the alphabet");
}

bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

Word make_word(const Alphabet& alphabet, std::string_view text) {
    std::vector<std::string> tokens;
    std::istringstream in{std::string(text)};
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    if (tokens.empty() || (tokens.size() == 1 && tokens[0] == kEpsilonToken)) return {};

    Word w;
    if (tokens.size() == 1 && !alphabet.find(tokens[0])) {
        bool packed = std::all_of(alphabet.names().begin(), alphabet.names().end(),
                                  [](const std::string& n) { return n.size() == 1; });
        if (packed) {
            for (char c : tokens[0]) w.push_back(alphabet.at(std::string_view(&c, 1)));
            return w;
        }
    }
    for (const auto& t : tokens) w.push_back(alphabet.at(t));
    return w;
}

std::string format_word(const Alphabet& alphabet, const Word& w) {
    if (w.empty()) return std::string(kEpsilonToken);
    bool packed = std::all_of(alphabet.names().begin(), alphabet.names().end(),
                              [](const std::string& n) { return n.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!packed && i > 0) out += '.';
        out += alphabet.name(w[i]);
    }
    return out;
}

Suite::Suite(Alphabet alphabet, std::vector<Word> words)
    : alphabet_(std::move(alphabet)), words_(std::move(words)) {
    for (const auto& w : words_)
        for (Symbol s : w)
            if (s >= alphabet_.size())
                throw MismatchError("word symbol index " + std::to_string(s) + " outside alphabet of size " +
                                    std::to_string(alphabet_.size()));
    std::sort(words_.begin(), words_.end(), shortlex_less);
    words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

bool Suite::contains(const Word& w) const {
    return std::binary_search(words_.begin(), words_.end(), w, shortlex_less);
}

Suite words_upto(const Alphabet& alphabet, std::size_t k) {
    std::vector<Word> out{Word{}};
    std::size_t level_begin = 0;
    for (std::size_t len = 1; len <= k; ++len) {
        std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (Symbol a = 0; a < alphabet.size(); ++a) {
                Word w = out[i];
                w.push_back(a);
                out.push_back(std::move(w));
            }
        }
        level_begin = level_end;
    }
    return Suite(alphabet, std::move(out));
}

Suite concat_suites(const Suite& a, const Suite& b) {
    if (a.alphabet() != b.alphabet()) throw MismatchError("concat_suites: alphabet mismatch");
    std::vector<Word> out;
    out.reserve(a.size() * b.size());
    for (const auto& u : a) {
        for (const auto& v : b) {
            Word w = u;
            w.insert(w.end(), v.begin(), v.end());
            out.push_back(std::move(w));
        }
    }
    return Suite(a.alphabet(), std::move(out));
}

Suite w_suite(const Suite& p, const Alphabet& alphabet, std::size_t k, const Suite& w) {
    if (!p.contains_epsilon()) throw PreconditionError("w_suite: state cover must contain the empty word");
    if (!w.contains_epsilon()) throw PreconditionError("w_suite: characterization set must contain the empty word");
    return concat_suites(concat_suites(p, words_upto(alphabet, k + 1)), w);
}

Suite prefix_close(const Suite& t) {
    std::vector<Word> out;
    for (const auto& w : t)
        for (std::size_t len = 0; len <= w.size(); ++len) out.emplace_back(w.begin(), w.begin() + len);
    return Suite(t.alphabet(), std::move(out));
}

} // namespace wmethod
