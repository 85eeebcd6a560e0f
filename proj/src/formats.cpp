#include "wmethod/formats.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "wmethod/error.hpp"

namespace wmethod {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        pos = end + 1;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        std::istringstream in{std::string(raw)};
        Line line{number, {}};
        for (std::string tok; in >> tok;) line.tokens.push_back(tok);
        if (line.tokens.empty() || line.tokens.front().starts_with("#")) continue;
        lines.push_back(std::move(line));
    }
    return lines;
}

std::size_t last_line(std::string_view text) {
    std::size_t n = 1;
    for (char c : text)
        if (c == '\n') ++n;
    if (text.ends_with('\n')) --n;
    return n;
}

class Reader {
public:
    Reader(const std::string& file) : file_(file) {}

    [[noreturn]] void fail(std::size_t line, const std::string& msg) const { throw ParseError(file_, line, msg); }

    std::size_t number(const Line& l, std::size_t i, const char* what) const {
        const std::string& tok = l.tokens[i];
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            fail(l.number, std::string("expected ") + what + ", got '" + tok + "'");
        return value;
    }

    std::size_t index(const Line& l, std::size_t i, std::size_t bound, const char* what) const {
        std::size_t v = number(l, i, what);
        if (v >= bound) fail(l.number, std::string(what) + " '" + l.tokens[i] + "' out of range");
        return v;
    }

    Symbol symbol(const Line& l, std::size_t i, const Alphabet& alphabet) const {
        auto s = alphabet.find(l.tokens[i]);
        if (!s) fail(l.number, "unknown symbol '" + l.tokens[i] + "'");
        return *s;
    }

    Rat rational(const Line& l, std::size_t i) const {
        auto r = parse_rat(l.tokens[i]);
        if (!r) fail(l.number, "malformed rational '" + l.tokens[i] + "'");
        return *r;
    }

    void arity(const Line& l, std::size_t want) const {
        if (l.tokens.size() != want)
            fail(l.number, "'" + l.tokens[0] + "' expects " + std::to_string(want - 1) + " argument(s)");
    }

    void min_arity(const Line& l, std::size_t want) const {
        if (l.tokens.size() < want)
            fail(l.number, "'" + l.tokens[0] + "' expects at least " + std::to_string(want - 1) + " argument(s)");
    }

private:
    const std::string& file_;
};

// Shared header handling: returns the kind token after checking the first directive.
std::string read_kind(const std::vector<Line>& lines, const Reader& rd) {
    if (lines.empty()) rd.fail(1, "empty input, expected 'kind'");
    const Line& first = lines.front();
    if (first.tokens[0] != "kind") rd.fail(first.number, "first directive must be 'kind', got '" + first.tokens[0] + "'");
    rd.arity(first, 2);
    return first.tokens[1];
}

template <class F>
auto wrap_semantic(const Reader& rd, std::size_t line, F&& build) {
    try {
        return build();
    } catch (const MismatchError& e) {
        rd.fail(line, e.what());
    }
}

} // namespace

Fsm parse_fsm(std::string_view text, const std::string& file) {
    Reader rd(file);
    auto lines = tokenize(text);
    const std::string kind_tok = read_kind(lines, rd);
    FsmKind kind;
    if (kind_tok == "dfa") kind = FsmKind::dfa;
    else if (kind_tok == "moore") kind = FsmKind::moore;
    else if (kind_tok == "mealy") kind = FsmKind::mealy;
    else rd.fail(lines.front().number, "unknown machine kind '" + kind_tok + "' for an .aut file");

    std::optional<Alphabet> alphabet;
    std::optional<std::size_t> n;
    std::optional<State> initial;
    std::map<std::pair<State, Symbol>, State> trans;
    std::set<State> accepting;
    std::map<std::size_t, std::string> outputs;  // key: state (moore) or state*|Σ|+sym (mealy)

    auto need_header = [&](const Line& l) {
        if (!alphabet) rd.fail(l.number, "'alphabet' must precede '" + l.tokens[0] + "'");
        if (!n) rd.fail(l.number, "'states' must precede '" + l.tokens[0] + "'");
    };

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        const std::string& d = l.tokens[0];
        if (d == "alphabet") {
            if (alphabet) rd.fail(l.number, "duplicate 'alphabet'");
            rd.min_arity(l, 2);
            alphabet = wrap_semantic(rd, l.number, [&] {
                return Alphabet(std::vector<std::string>(l.tokens.begin() + 1, l.tokens.end()));
            });
        } else if (d == "states") {
            if (n) rd.fail(l.number, "duplicate 'states'");
            rd.arity(l, 2);
            n = rd.number(l, 1, "state count");
            if (*n == 0) rd.fail(l.number, "state count must be positive");
        } else if (d == "initial") {
            need_header(l);
            if (initial) rd.fail(l.number, "duplicate 'initial'");
            rd.arity(l, 2);
            initial = static_cast<State>(rd.index(l, 1, *n, "state"));
        } else if (d == "accepting") {
            need_header(l);
            if (kind != FsmKind::dfa) rd.fail(l.number, "'accepting' is only valid for dfa");
            for (std::size_t t = 1; t < l.tokens.size(); ++t) accepting.insert(static_cast<State>(rd.index(l, t, *n, "state")));
        } else if (d == "output") {
            need_header(l);
            if (kind == FsmKind::dfa) rd.fail(l.number, "dfa uses 'accepting', not 'output'");
            std::size_t key;
            std::string value;
            if (kind == FsmKind::moore) {
                rd.arity(l, 3);
                key = rd.index(l, 1, *n, "state");
                value = l.tokens[2];
            } else {
                rd.arity(l, 4);
                key = rd.index(l, 1, *n, "state") * alphabet->size() + rd.symbol(l, 2, *alphabet);
                value = l.tokens[3];
            }
            if (!outputs.emplace(key, value).second) rd.fail(l.number, "duplicate output");
        } else if (d == "trans") {
            need_header(l);
            rd.arity(l, 4);
            State src = static_cast<State>(rd.index(l, 1, *n, "state"));
            Symbol a = rd.symbol(l, 2, *alphabet);
            State dst = static_cast<State>(rd.index(l, 3, *n, "state"));
            if (!trans.emplace(std::make_pair(src, a), dst).second)
                rd.fail(l.number, "duplicate transition for state " + l.tokens[1] + " on '" + l.tokens[2] + "'");
        } else if (d == "kind") {
            rd.fail(l.number, "duplicate 'kind'");
        } else {
            rd.fail(l.number, "unknown directive '" + d + "'");
        }
    }

    const std::size_t end = last_line(text);
    if (!alphabet) rd.fail(end, "missing 'alphabet'");
    if (!n) rd.fail(end, "missing 'states'");
    if (!initial) rd.fail(end, "missing 'initial'");

    const std::size_t nsym = alphabet->size();
    std::vector<State> delta(*n * nsym);
    for (State q = 0; q < *n; ++q) {
        for (Symbol a = 0; a < nsym; ++a) {
            auto it = trans.find({q, a});
            if (it == trans.end())
                rd.fail(end, "missing transition for state " + std::to_string(q) + " on '" + alphabet->name(a) + "'");
            delta[q * nsym + a] = it->second;
        }
    }
    std::vector<std::string> out;
    if (kind == FsmKind::dfa) {
        for (State q = 0; q < *n; ++q) out.push_back(accepting.count(q) ? "1" : "0");
    } else {
        std::size_t want = kind == FsmKind::moore ? *n : *n * nsym;
        for (std::size_t key = 0; key < want; ++key) {
            auto it = outputs.find(key);
            if (it == outputs.end()) {
                if (kind == FsmKind::moore) rd.fail(end, "missing output for state " + std::to_string(key));
                rd.fail(end, "missing output for state " + std::to_string(key / nsym) + " on '" +
                                 alphabet->name(static_cast<Symbol>(key % nsym)) + "'");
            }
            out.push_back(it->second);
        }
    }
    return wrap_semantic(rd, end, [&] { return Fsm(kind, *alphabet, *n, *initial, std::move(delta), std::move(out)); });
}

Wa parse_wa(std::string_view text, const std::string& file) {
    Reader rd(file);
    auto lines = tokenize(text);
    const std::string kind_tok = read_kind(lines, rd);
    if (kind_tok != "wa") rd.fail(lines.front().number, "unknown machine kind '" + kind_tok + "' for a .wa file");

    std::optional<Alphabet> alphabet;
    std::optional<std::size_t> dim;
    RatVec s0, f;
    std::vector<RatMatrix> mats;
    std::set<std::size_t> seen_init, seen_final;
    std::set<std::tuple<std::size_t, Symbol, std::size_t>> seen_trans;

    auto need_header = [&](const Line& l) {
        if (!alphabet) rd.fail(l.number, "'alphabet' must precede '" + l.tokens[0] + "'");
        if (!dim) rd.fail(l.number, "'dim' must precede '" + l.tokens[0] + "'");
    };

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        const std::string& d = l.tokens[0];
        if (d == "alphabet") {
            if (alphabet) rd.fail(l.number, "duplicate 'alphabet'");
            rd.min_arity(l, 2);
            alphabet = wrap_semantic(rd, l.number, [&] {
                return Alphabet(std::vector<std::string>(l.tokens.begin() + 1, l.tokens.end()));
            });
        } else if (d == "dim") {
            if (dim) rd.fail(l.number, "duplicate 'dim'");
            if (!alphabet) rd.fail(l.number, "'alphabet' must precede 'dim'");
            rd.arity(l, 2);
            dim = rd.number(l, 1, "dimension");
            s0.assign(*dim, Rat(0));
            f.assign(*dim, Rat(0));
            mats.assign(alphabet->size(), RatMatrix(*dim, *dim));
        } else if (d == "init" || d == "final") {
            need_header(l);
            rd.arity(l, 3);
            std::size_t q = rd.index(l, 1, *dim, "state");
            auto& seen = d == "init" ? seen_init : seen_final;
            if (!seen.insert(q).second) rd.fail(l.number, "duplicate '" + d + "' weight for state " + l.tokens[1]);
            (d == "init" ? s0 : f)[q] = rd.rational(l, 2);
        } else if (d == "trans") {
            need_header(l);
            rd.arity(l, 5);
            std::size_t src = rd.index(l, 1, *dim, "state");
            Symbol a = rd.symbol(l, 2, *alphabet);
            std::size_t dst = rd.index(l, 3, *dim, "state");
            if (!seen_trans.insert({src, a, dst}).second)
                rd.fail(l.number, "duplicate weight for 'trans " + l.tokens[1] + ' ' + l.tokens[2] + ' ' + l.tokens[3] + "'");
            mats[a](dst, src) = rd.rational(l, 4);
        } else if (d == "kind") {
            rd.fail(l.number, "duplicate 'kind'");
        } else {
            rd.fail(l.number, "unknown directive '" + d + "'");
        }
    }
    const std::size_t end = last_line(text);
    if (!alphabet) rd.fail(end, "missing 'alphabet'");
    if (!dim) rd.fail(end, "missing 'dim'");
    return wrap_semantic(rd, end, [&] { return Wa(*alphabet, *dim, std::move(s0), std::move(mats), std::move(f)); });
}

Rna parse_rna(std::string_view text, const std::string& file) {
    Reader rd(file);
    auto lines = tokenize(text);
    const std::string kind_tok = read_kind(lines, rd);
    if (kind_tok != "rna") rd.fail(lines.front().number, "unknown machine kind '" + kind_tok + "' for an .rna file");

    std::vector<RnaLocation> locs;
    std::map<std::string, std::size_t> by_name;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        if (l.tokens[0] != "loc") continue;
        rd.arity(l, 3);
        if (by_name.count(l.tokens[1])) rd.fail(l.number, "duplicate location '" + l.tokens[1] + "'");
        by_name.emplace(l.tokens[1], locs.size());
        locs.push_back(RnaLocation{l.tokens[1], rd.number(l, 2, "arity")});
    }
    auto location = [&](const Line& l, std::size_t i) {
        auto it = by_name.find(l.tokens[i]);
        if (it == by_name.end()) rd.fail(l.number, "unknown location '" + l.tokens[i] + "'");
        return it->second;
    };

    std::optional<std::size_t> initial;
    std::vector<bool> accepting(locs.size(), false);
    std::vector<std::vector<std::optional<RnaRule>>> rules(locs.size());
    for (std::size_t l = 0; l < locs.size(); ++l) rules[l].resize(locs[l].arity + 1);

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        const std::string& d = l.tokens[0];
        if (d == "loc") continue;
        if (d == "initial") {
            if (initial) rd.fail(l.number, "duplicate 'initial'");
            rd.arity(l, 2);
            initial = location(l, 1);
            if (locs[*initial].arity != 0) rd.fail(l.number, "initial location '" + l.tokens[1] + "' must have arity 0");
        } else if (d == "accepting") {
            for (std::size_t t = 1; t < l.tokens.size(); ++t) accepting[location(l, t)] = true;
        } else if (d == "trans") {
            rd.min_arity(l, 4);
            const std::size_t src = location(l, 1);
            const std::size_t r = locs[src].arity;
            std::size_t pos = 2;
            std::optional<std::size_t> guard;
            if (l.tokens[pos] == "eq") {
                rd.min_arity(l, 5);
                std::size_t k = rd.number(l, pos + 1, "register");
                if (k == 0 || k > r) rd.fail(l.number, "guard register 'eq " + l.tokens[pos + 1] + "' out of range");
                guard = k - 1;
                pos += 2;
            } else if (l.tokens[pos] == "fresh") {
                pos += 1;
            } else {
                rd.fail(l.number, "unknown guard '" + l.tokens[pos] + "', expected 'eq k' or 'fresh'");
            }
            if (pos >= l.tokens.size()) rd.fail(l.number, "missing target location");
            RnaRule rule;
            rule.target = location(l, pos++);
            const std::size_t tarity = locs[rule.target].arity;
            if (l.tokens.size() - pos != tarity)
                rd.fail(l.number, "assignment into '" + locs[rule.target].name + "' must list " +
                                      std::to_string(tarity) + " source(s)");
            std::set<RegSource> used;
            for (; pos < l.tokens.size(); ++pos) {
                const std::string& tok = l.tokens[pos];
                RegSource s;
                if (tok == "x") {
                    s = kFromInput;
                } else if (tok.size() > 1 && tok[0] == 'r') {
                    std::size_t k = 0;
                    auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), k);
                    if (ec != std::errc() || ptr != tok.data() + tok.size() || k == 0 || k > r)
                        rd.fail(l.number, "register source '" + tok + "' out of range");
                    s = static_cast<RegSource>(k - 1);
                } else {
                    rd.fail(l.number, "bad register source '" + tok + "', expected rK or x");
                }
                RegSource key = (s == kFromInput && guard) ? static_cast<RegSource>(*guard) : s;
                if (!used.insert(key).second) rd.fail(l.number, "assignment is not injective at '" + tok + "'");
                rule.assignment.push_back(s);
            }
            auto& slot = guard ? rules[src][*guard] : rules[src].back();
            if (slot) rd.fail(l.number, "duplicate guard for location '" + l.tokens[1] + "'");
            slot = std::move(rule);
        } else if (d == "kind") {
            rd.fail(l.number, "duplicate 'kind'");
        } else {
            rd.fail(l.number, "unknown directive '" + d + "'");
        }
    }
    const std::size_t end = last_line(text);
    if (locs.empty()) rd.fail(end, "no locations declared");
    if (!initial) rd.fail(end, "missing 'initial'");
    std::vector<std::vector<RnaRule>> complete(locs.size());
    for (std::size_t l = 0; l < locs.size(); ++l) {
        for (std::size_t g = 0; g < rules[l].size(); ++g) {
            if (!rules[l][g]) {
                std::string guard = g < locs[l].arity ? "eq " + std::to_string(g + 1) : "fresh";
                rd.fail(end, "missing transition for location '" + locs[l].name + "' guard '" + guard + "'");
            }
            complete[l].push_back(std::move(*rules[l][g]));
        }
    }
    return wrap_semantic(rd, end, [&] { return Rna(std::move(locs), *initial, std::move(accepting), std::move(complete)); });
}

Machine parse_machine(std::string_view text, const std::string& file) {
    Reader rd(file);
    auto lines = tokenize(text);
    const std::string kind = read_kind(lines, rd);
    if (kind == "dfa" || kind == "moore" || kind == "mealy") return parse_fsm(text, file);
    if (kind == "wa") return parse_wa(text, file);
    if (kind == "rna") return parse_rna(text, file);
    rd.fail(lines.front().number, "unknown machine kind '" + kind + "'");
}

std::string serialize_fsm(const Fsm& m) {
    std::ostringstream out;
    const auto& ab = m.alphabet();
    out << "kind " << to_string(m.kind()) << "\nalphabet";
    for (const auto& s : ab.names()) out << ' ' << s;
    out << "\nstates " << m.n_states() << "\ninitial " << m.initial() << '\n';
    if (m.kind() == FsmKind::dfa) {
        out << "accepting";
        for (State q = 0; q < m.n_states(); ++q)
            if (m.state_output(q) == "1") out << ' ' << q;
        out << '\n';
    } else if (m.kind() == FsmKind::moore) {
        for (State q = 0; q < m.n_states(); ++q) out << "output " << q << ' ' << m.state_output(q) << '\n';
    } else {
        for (State q = 0; q < m.n_states(); ++q)
            for (Symbol a = 0; a < ab.size(); ++a)
                out << "output " << q << ' ' << ab.name(a) << ' ' << m.transition_output(q, a) << '\n';
    }
    for (State q = 0; q < m.n_states(); ++q)
        for (Symbol a = 0; a < ab.size(); ++a) out << "trans " << q << ' ' << ab.name(a) << ' ' << m.next(q, a) << '\n';
    return out.str();
}

std::string serialize_wa(const Wa& m) {
    std::ostringstream out;
    const auto& ab = m.alphabet();
    out << "kind wa\nalphabet";
    for (const auto& s : ab.names()) out << ' ' << s;
    out << "\ndim " << m.dim() << '\n';
    for (std::size_t i = 0; i < m.dim(); ++i)
        if (m.initial()[i] != 0) out << "init " << i << ' ' << to_string(m.initial()[i]) << '\n';
    for (std::size_t i = 0; i < m.dim(); ++i)
        if (m.final()[i] != 0) out << "final " << i << ' ' << to_string(m.final()[i]) << '\n';
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (Symbol a = 0; a < ab.size(); ++a)
            for (std::size_t j = 0; j < m.dim(); ++j)
                if (m.weight(i, a, j) != 0)
                    out << "trans " << i << ' ' << ab.name(a) << ' ' << j << ' ' << to_string(m.weight(i, a, j)) << '\n';
    return out.str();
}

std::string serialize_rna(const Rna& m) {
    std::ostringstream out;
    out << "kind rna\n";
    for (const auto& loc : m.locations()) out << "loc " << loc.name << ' ' << loc.arity << '\n';
    out << "initial " << m.location(m.initial()).name << '\n';
    bool any = false;
    for (std::size_t l = 0; l < m.n_locations(); ++l) {
        if (!m.accepting(l)) continue;
        out << (any ? " " : "accepting ") << m.location(l).name;
        any = true;
    }
    if (any) out << '\n';
    for (std::size_t l = 0; l < m.n_locations(); ++l) {
        const auto& rs = m.rules()[l];
        for (std::size_t g = 0; g < rs.size(); ++g) {
            out << "trans " << m.location(l).name << ' ';
            if (g + 1 < rs.size()) out << "eq " << g + 1;
            else out << "fresh";
            out << ' ' << m.location(rs[g].target).name;
            for (RegSource s : rs[g].assignment) {
                if (s == kFromInput) out << " x";
                else out << " r" << s + 1;
            }
            out << '\n';
        }
    }
    return out.str();
}

std::string serialize_machine(const Machine& m) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Fsm>) return serialize_fsm(x);
            else if constexpr (std::is_same_v<T, Wa>) return serialize_wa(x);
            else return serialize_rna(x);
        },
        m);
}

Suite parse_suite(std::string_view text, const Alphabet& alphabet, const std::string& file) {
    Reader rd(file);
    std::vector<Word> words;
    for (const auto& l : tokenize(text)) {
        if (l.tokens.size() == 1 && l.tokens[0] == kEpsilonToken) {
            words.emplace_back();
            continue;
        }
        Word w;
        for (std::size_t i = 0; i < l.tokens.size(); ++i) w.push_back(rd.symbol(l, i, alphabet));
        words.push_back(std::move(w));
    }
    return Suite(alphabet, std::move(words));
}

std::string serialize_suite(const Suite& t) {
    std::string out;
    for (const auto& w : t) {
        if (w.empty()) {
            out += kEpsilonToken;
        } else {
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (i > 0) out += ' ';
                out += t.alphabet().name(w[i]);
            }
        }
        out += '\n';
    }
    return out;
}

OrbitSuite parse_orbit_suite(std::string_view text, const std::string& file) {
    Reader rd(file);
    std::vector<SymbolicWord> patterns;
    for (const auto& l : tokenize(text)) {
        if (l.tokens.size() == 1 && l.tokens[0] == kEpsilonToken) {
            patterns.emplace_back();
            continue;
        }
        std::vector<std::uint32_t> labels;
        for (std::size_t i = 0; i < l.tokens.size(); ++i)
            labels.push_back(static_cast<std::uint32_t>(rd.number(l, i, "class label")));
        patterns.push_back(wrap_semantic(rd, l.number, [&] { return SymbolicWord(std::move(labels)); }));
    }
    return OrbitSuite(std::move(patterns));
}

std::string serialize_suite(const OrbitSuite& t) {
    std::string out;
    for (const auto& s : t) {
        if (s.empty()) {
            out += kEpsilonToken;
        } else {
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (i > 0) out += ' ';
                out += std::to_string(s.labels()[i]);
            }
        }
        out += '\n';
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Machine load_machine(const std::filesystem::path& path) { return parse_machine(read_file(path), path.string()); }

} // namespace wmethod
