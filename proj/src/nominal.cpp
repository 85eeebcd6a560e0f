#include "wmethod/nominal.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "wmethod/error.hpp"

namespace wmethod {

// ---------------------------------------------------------------------------
// Machine

Rna::Rna(std::vector<RnaLocation> locations, std::size_t initial, std::vector<bool> accepting,
         std::vector<std::vector<RnaRule>> rules)
    : locations_(std::move(locations)), initial_(initial), accepting_(std::move(accepting)), rules_(std::move(rules)) {
    const std::size_t n = locations_.size();
    if (n == 0) throw MismatchError("rna: at least one location is required");
    if (initial_ >= n) throw MismatchError("rna: initial location out of range");
    if (locations_[initial_].arity != 0)
        throw MismatchError("rna: initial location '" + locations_[initial_].name + "' must have arity 0");
    if (accepting_.size() != n) throw MismatchError("rna: accepting flags must cover every location");
    if (rules_.size() != n) throw MismatchError("rna: rules must cover every location");
    for (std::size_t l = 0; l < n; ++l) {
        const auto& loc = locations_[l];
        if (rules_[l].size() != loc.arity + 1)
            throw MismatchError("rna: location '" + loc.name + "' needs exactly " + std::to_string(loc.arity + 1) +
                                " rules (one per guard)");
        for (std::size_t g = 0; g < rules_[l].size(); ++g) {
            const auto& r = rules_[l][g];
            if (r.target >= n) throw MismatchError("rna: rule target out of range in '" + loc.name + "'");
            const auto& tgt = locations_[r.target];
            if (r.assignment.size() != tgt.arity)
                throw MismatchError("rna: assignment into '" + tgt.name + "' must list " + std::to_string(tgt.arity) +
                                    " sources");
            // Under guard "x = reg g" the input and register g carry the same atom.
            std::set<RegSource> used;
            for (RegSource s : r.assignment) {
                if (s != kFromInput && (s < 0 || static_cast<std::size_t>(s) >= loc.arity))
                    throw MismatchError("rna: assignment in '" + loc.name + "' uses a register it does not have");
                RegSource key = (s == kFromInput && g < loc.arity) ? static_cast<RegSource>(g) : s;
                if (!used.insert(key).second)
                    throw MismatchError("rna: assignment in '" + loc.name + "' is not injective");
            }
        }
    }
}

const RnaRule& Rna::rule(std::size_t l, std::optional<std::size_t> reg) const {
    const auto& rs = rules_.at(l);
    return reg ? rs.at(*reg) : rs.back();
}

std::optional<std::size_t> Rna::find_location(const std::string& name) const {
    for (std::size_t l = 0; l < locations_.size(); ++l)
        if (locations_[l].name == name) return l;
    return std::nullopt;
}

Rna Rna::with_accepting(std::size_t l, bool value) const {
    auto acc = accepting_;
    acc.at(l) = value;
    return Rna(locations_, initial_, std::move(acc), rules_);
}

Rna Rna::with_rule(std::size_t l, std::optional<std::size_t> reg, RnaRule rule) const {
    auto rules = rules_;
    auto& rs = rules.at(l);
    (reg ? rs.at(*reg) : rs.back()) = std::move(rule);
    return Rna(locations_, initial_, accepting_, std::move(rules));
}

RnaConfig rna_step(const Rna& a, const RnaConfig& c, Atom x) {
    std::optional<std::size_t> guard;
    for (std::size_t i = 0; i < c.registers.size(); ++i)
        if (c.registers[i] == x) guard = i;
    const RnaRule& r = a.rule(c.location, guard);
    RnaConfig next{r.target, {}};
    next.registers.reserve(r.assignment.size());
    for (RegSource s : r.assignment) next.registers.push_back(s == kFromInput ? x : c.registers[s]);
    return next;
}

RnaConfig rna_run_from(const Rna& a, RnaConfig c, std::span<const Atom> w) {
    for (Atom x : w) c = rna_step(a, c, x);
    return c;
}

RnaConfig rna_run(const Rna& a, std::span<const Atom> w) {
    return rna_run_from(a, RnaConfig{a.initial(), {}}, w);
}

// ---------------------------------------------------------------------------
// Patterns

SymbolicWord::SymbolicWord(std::vector<std::uint32_t> labels) : labels_(std::move(labels)) {
    std::uint32_t top = 0;
    for (auto l : labels_) {
        if (l == 0 || l > top + 1) throw MismatchError("pattern labels must be canonical (1, then at most max+1)");
        top = std::max(top, l);
    }
    classes_ = top;
}

std::strong_ordering operator<=>(const SymbolicWord& a, const SymbolicWord& b) {
    if (auto c = a.labels_.size() <=> b.labels_.size(); c != 0) return c;
    return a.labels_ <=> b.labels_;
}

SymbolicWord pattern_of(std::span<const Atom> w) { return SymbolicWord::of(w); }

AtomWord instantiate(const SymbolicWord& s) {
    AtomWord w;
    w.reserve(s.size());
    for (auto l : s.labels()) w.push_back(Atom{l});
    return w;
}

std::string format_pattern(const SymbolicWord& s) {
    if (s.empty()) return std::string(kEpsilonToken);
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(s.labels()[i]);
    }
    return out + "]";
}

SymbolicRunResult symbolic_run(const Rna& a, const SymbolicWord& s) {
    auto w = instantiate(s);
    auto c = rna_run(a, w);
    return {c.location, a.accepting(c.location)};
}

OrbitSuite::OrbitSuite(std::vector<SymbolicWord> patterns) : patterns_(std::move(patterns)) {
    std::sort(patterns_.begin(), patterns_.end());
    patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());
}

bool OrbitSuite::contains(const SymbolicWord& s) const {
    return std::binary_search(patterns_.begin(), patterns_.end(), s);
}

std::size_t OrbitSuite::max_length() const { return patterns_.empty() ? 0 : patterns_.back().size(); }

OrbitSuite patterns_upto(std::size_t k) {
    std::vector<SymbolicWord> out;
    std::vector<std::uint32_t> labels;
    std::function<void(std::uint32_t)> grow = [&](std::uint32_t top) {
        out.push_back(SymbolicWord(labels));
        if (labels.size() == k) return;
        for (std::uint32_t l = 1; l <= top + 1; ++l) {
            labels.push_back(l);
            grow(std::max(top, l));
            labels.pop_back();
        }
    };
    grow(0);
    return OrbitSuite(std::move(out));
}

OrbitSuite concat_orbit(const OrbitSuite& a, const OrbitSuite& b) {
    std::vector<SymbolicWord> out;
    for (const auto& u : a) {
        for (const auto& v : b) {
            const std::size_t m = u.classes();
            const std::size_t n = v.classes();
            // image[j]: class of u that v's class j+1 is identified with, 0 for a fresh class.
            std::vector<std::uint32_t> image(n, 0);
            std::vector<bool> taken(m + 1, false);
            std::function<void(std::size_t)> choose = [&](std::size_t j) {
                if (j == n) {
                    std::vector<std::uint32_t> labels = u.labels();
                    for (auto l : v.labels()) {
                        auto img = image[l - 1];
                        labels.push_back(img != 0 ? img : static_cast<std::uint32_t>(m + l));
                    }
                    out.push_back(SymbolicWord::of(std::span<const std::uint32_t>(labels)));
                    return;
                }
                image[j] = 0;
                choose(j + 1);
                for (std::uint32_t c = 1; c <= m; ++c) {
                    if (taken[c]) continue;
                    taken[c] = true;
                    image[j] = c;
                    choose(j + 1);
                    taken[c] = false;
                }
                image[j] = 0;
            };
            choose(0);
        }
    }
    return OrbitSuite(std::move(out));
}

OrbitSuite w_suite_rna(const OrbitSuite& p, std::size_t k, const OrbitSuite& w) {
    if (!p.contains_epsilon()) throw PreconditionError("w_suite_rna: P must contain the empty pattern");
    if (!w.contains_epsilon()) throw PreconditionError("w_suite_rna: W must contain the empty pattern");
    return concat_orbit(concat_orbit(p, patterns_upto(k + 1)), w);
}

OrbitSuite prefix_close_orbit(const OrbitSuite& t) {
    std::vector<SymbolicWord> out;
    for (const auto& s : t)
        for (std::size_t len = 0; len <= s.size(); ++len)
            out.push_back(SymbolicWord(std::vector<std::uint32_t>(s.labels().begin(), s.labels().begin() + len)));
    return OrbitSuite(std::move(out));
}

SymbolicWord extend(const SymbolicWord& w, LetterChoice c) {
    auto labels = w.labels();
    if (c) {
        if (*c == 0 || *c > w.classes()) throw MismatchError("extend: class label out of range");
        labels.push_back(*c);
    } else {
        labels.push_back(static_cast<std::uint32_t>(w.classes() + 1));
    }
    return SymbolicWord(std::move(labels));
}

std::vector<LetterChoice> letter_choices(const SymbolicWord& w) {
    std::vector<LetterChoice> out;
    for (std::uint32_t c = 1; c <= w.classes(); ++c) out.emplace_back(c);
    out.emplace_back(std::nullopt);
    return out;
}

// ---------------------------------------------------------------------------
// Weak state covers

namespace {

// Atom carried by each class of a concrete word, in class order.
std::vector<Atom> class_atoms(std::span<const Atom> w) {
    std::vector<Atom> reps;
    for (Atom x : w)
        if (std::find(reps.begin(), reps.end(), x) == reps.end()) reps.push_back(x);
    return reps;
}

// Every injective relabelling of the classes of `u` into labels 1..available.
void for_each_embedding(const SymbolicWord& u, std::size_t available,
                        const std::function<bool(const std::vector<std::uint32_t>&)>& visit) {
    const std::size_t m = u.classes();
    std::vector<std::uint32_t> image(m, 0);
    std::vector<bool> taken(available + 1, false);
    bool stop = false;
    std::function<void(std::size_t)> choose = [&](std::size_t j) {
        if (stop) return;
        if (j == m) {
            std::vector<std::uint32_t> labels;
            labels.reserve(u.size());
            for (auto l : u.labels()) labels.push_back(image[l - 1]);
            stop = visit(labels);
            return;
        }
        for (std::uint32_t c = 1; c <= available && !stop; ++c) {
            if (taken[c]) continue;
            taken[c] = true;
            image[j] = c;
            choose(j + 1);
            taken[c] = false;
        }
    };
    choose(0);
}

AtomWord labels_as_atoms(const std::vector<std::uint32_t>& labels) {
    AtomWord w;
    w.reserve(labels.size());
    for (auto l : labels) w.push_back(Atom{l});
    return w;
}

} // namespace

AtomWord apply_cover_map(const RnaCoverMap& delta_p, std::span<const Atom> w, Atom c) {
    auto reps = class_atoms(w);
    LetterChoice choice;
    for (std::size_t i = 0; i < reps.size(); ++i)
        if (reps[i] == c) choice = static_cast<std::uint32_t>(i + 1);
    auto it = delta_p.find({pattern_of(w), choice});
    if (it == delta_p.end()) throw PreconditionError("apply_cover_map: delta_P undefined on this orbit");
    if (!choice) reps.push_back(c);
    AtomWord out;
    for (auto l : it->second) out.push_back(reps.at(l - 1));
    return out;
}

bool verify_weak_cover_rna(const Rna& a, const OrbitSuite& p, const RnaCoverMap& delta_p) {
    if (!p.contains_epsilon()) throw PreconditionError("verify_weak_cover_rna: P must contain the empty pattern");
    for (const auto& w : p) {
        for (auto c : letter_choices(w)) {
            auto it = delta_p.find({w, c});
            if (it == delta_p.end())
                throw PreconditionError("verify_weak_cover_rna: delta_P undefined on " + format_pattern(w));
            const SymbolicWord wc = extend(w, c);
            for (auto l : it->second)
                if (l == 0 || l > wc.classes())
                    throw PreconditionError("verify_weak_cover_rna: delta_P value refers to an atom outside w·c");
            if (!p.contains(SymbolicWord::of(std::span<const std::uint32_t>(it->second))))
                throw PreconditionError("verify_weak_cover_rna: delta_P value for " + format_pattern(w) +
                                        " is not in P");
            // Canonical instantiation of w·c maps class l to Atom{l}, so the value's labels are its atoms.
            if (rna_run(a, labels_as_atoms(it->second)) != rna_run(a, instantiate(wc))) return false;
        }
    }
    return true;
}

std::optional<RnaCoverMap> find_cover_map_rna(const Rna& a, const OrbitSuite& p) {
    RnaCoverMap delta_p;
    for (const auto& w : p) {
        for (auto c : letter_choices(w)) {
            const SymbolicWord wc = extend(w, c);
            const RnaConfig target = rna_run(a, instantiate(wc));
            std::optional<std::vector<std::uint32_t>> found;
            for (const auto& u : p) {
                if (u.classes() > wc.classes() || u.classes() < target.registers.size()) continue;
                for_each_embedding(u, wc.classes(), [&](const std::vector<std::uint32_t>& labels) {
                    if (rna_run(a, labels_as_atoms(labels)) != target) return false;
                    found = labels;
                    return true;
                });
                if (found) break;
            }
            if (!found) return std::nullopt;
            delta_p.emplace(std::make_pair(w, c), std::move(*found));
        }
    }
    return delta_p;
}

RnaWeakCover weak_cover_rna(const Rna& a, std::size_t max_patterns) {
    std::vector<SymbolicWord> order{SymbolicWord{}};
    std::set<SymbolicWord> members{SymbolicWord{}};
    for (std::size_t i = 0; i < order.size(); ++i) {
        const SymbolicWord w = order[i];
        for (auto c : letter_choices(w)) {
            const SymbolicWord wc = extend(w, c);
            const RnaConfig target = rna_run(a, instantiate(wc));
            bool redirected = false;
            for (const auto& u : members) {
                if (u.classes() > wc.classes()) continue;
                for_each_embedding(u, wc.classes(), [&](const std::vector<std::uint32_t>& labels) {
                    redirected = rna_run(a, labels_as_atoms(labels)) == target;
                    return redirected;
                });
                if (redirected) break;
            }
            if (redirected) continue;
            if (members.size() >= max_patterns) throw Error("weak_cover_rna: pattern limit exceeded");
            members.insert(wc);
            order.push_back(wc);
        }
    }
    OrbitSuite p(std::move(order));
    auto delta_p = find_cover_map_rna(a, p);
    if (!delta_p) throw Error("weak_cover_rna: internal error, P is not closed");
    return {std::move(p), std::move(*delta_p)};
}

// ---------------------------------------------------------------------------
// Product exploration

namespace {

struct PairKey {
    std::size_t l1, l2;
    std::vector<std::int32_t> match;  // register of side 1 -> equal register of side 2, or -1

    auto operator<=>(const PairKey&) const = default;
};

PairKey key_of(const RnaConfig& c1, const RnaConfig& c2) {
    PairKey k{c1.location, c2.location, std::vector<std::int32_t>(c1.registers.size(), -1)};
    for (std::size_t i = 0; i < c1.registers.size(); ++i)
        for (std::size_t j = 0; j < c2.registers.size(); ++j)
            if (c1.registers[i] == c2.registers[j]) k.match[i] = static_cast<std::int32_t>(j);
    return k;
}

struct Distinguish {
    std::optional<AtomWord> word;
    bool exhausted = false;
};

// BFS over the symbolic product; returns a shortest word on which acceptance
// from c1 (in a) and c2 (in b) differs.
Distinguish distinguish(const Rna& a, const Rna& b, const RnaConfig& c1, const RnaConfig& c2, std::size_t limit) {
    struct Node {
        RnaConfig s1, s2;
        AtomWord word;
        std::uint64_t next_fresh;
    };
    std::uint64_t top = 0;
    for (Atom x : c1.registers) top = std::max(top, x.id);
    for (Atom x : c2.registers) top = std::max(top, x.id);

    std::set<PairKey> visited{key_of(c1, c2)};
    std::deque<Node> queue{Node{c1, c2, {}, top + 1}};
    while (!queue.empty()) {
        Node cur = std::move(queue.front());
        queue.pop_front();
        if (a.accepting(cur.s1.location) != b.accepting(cur.s2.location)) return {std::move(cur.word), false};

        std::vector<Atom> candidates;
        for (Atom x : cur.s1.registers) candidates.push_back(x);
        for (Atom x : cur.s2.registers)
            if (std::find(candidates.begin(), candidates.end(), x) == candidates.end()) candidates.push_back(x);
        candidates.push_back(Atom{cur.next_fresh});

        for (Atom x : candidates) {
            Node nxt{rna_step(a, cur.s1, x), rna_step(b, cur.s2, x), cur.word, std::max(cur.next_fresh, x.id + 1)};
            nxt.word.push_back(x);
            if (!visited.insert(key_of(nxt.s1, nxt.s2)).second) continue;
            if (visited.size() > limit) return {std::nullopt, true};
            queue.push_back(std::move(nxt));
        }
    }
    return {std::nullopt, false};
}

// Every pair of distinct concrete states of `a` up to permutation, with
// reachable locations only: (l1, regs 1..r1) against (l2, regs sharing atoms per a partial matching).
void for_each_state_pair(const Rna& a, const std::function<void(const RnaConfig&, const RnaConfig&)>& visit) {
    auto reach = reachable_locations(a);
    for (std::size_t l1 = 0; l1 < a.n_locations(); ++l1) {
        if (!reach[l1]) continue;
        for (std::size_t l2 = 0; l2 < a.n_locations(); ++l2) {
            if (!reach[l2]) continue;
            const std::size_t r1 = a.location(l1).arity;
            const std::size_t r2 = a.location(l2).arity;
            RnaConfig c1{l1, {}};
            for (std::size_t i = 0; i < r1; ++i) c1.registers.push_back(Atom{i + 1});
            // assign[j]: side-1 register shared by side-2 register j, or -1.
            std::vector<std::int32_t> assign(r2, -1);
            std::vector<bool> used(r1, false);
            std::function<void(std::size_t)> choose = [&](std::size_t j) {
                if (j == r2) {
                    RnaConfig c2{l2, {}};
                    std::uint64_t fresh = r1 + 1;
                    bool identical = l1 == l2;
                    for (std::size_t k = 0; k < r2; ++k) {
                        if (assign[k] >= 0) {
                            c2.registers.push_back(c1.registers[assign[k]]);
                            if (static_cast<std::size_t>(assign[k]) != k) identical = false;
                        } else {
                            c2.registers.push_back(Atom{fresh++});
                            identical = false;
                        }
                    }
                    if (!identical) visit(c1, c2);
                    return;
                }
                assign[j] = -1;
                choose(j + 1);
                for (std::size_t i = 0; i < r1; ++i) {
                    if (used[i]) continue;
                    used[i] = true;
                    assign[j] = static_cast<std::int32_t>(i);
                    choose(j + 1);
                    used[i] = false;
                }
                assign[j] = -1;
            };
            choose(0);
        }
    }
}

// Does some instance of a pattern of w, placed relative to the registers of
// c1 and c2, get different verdicts from the two states?
bool separates(const Rna& a, const RnaConfig& c1, const RnaConfig& c2, const OrbitSuite& w) {
    std::vector<Atom> support = c1.registers;
    for (Atom x : c2.registers)
        if (std::find(support.begin(), support.end(), x) == support.end()) support.push_back(x);
    std::uint64_t fresh_base = 1;
    for (Atom x : support) fresh_base = std::max(fresh_base, x.id + 1);

    for (const auto& s : w) {
        const std::size_t m = s.classes();
        std::vector<Atom> image(m);
        std::vector<bool> taken(support.size(), false);
        bool found = false;
        std::function<void(std::size_t)> choose = [&](std::size_t j) {
            if (found) return;
            if (j == m) {
                AtomWord word;
                for (auto l : s.labels()) word.push_back(image[l - 1]);
                found = a.accepting(rna_run_from(a, c1, word).location) != a.accepting(rna_run_from(a, c2, word).location);
                return;
            }
            image[j] = Atom{fresh_base + j};
            choose(j + 1);
            for (std::size_t i = 0; i < support.size() && !found; ++i) {
                if (taken[i]) continue;
                taken[i] = true;
                image[j] = support[i];
                choose(j + 1);
                taken[i] = false;
            }
        };
        choose(0);
        if (found) return true;
    }
    return false;
}

constexpr std::size_t kPairLimit = 1'000'000;

} // namespace

std::vector<bool> reachable_locations(const Rna& a) {
    std::vector<bool> seen(a.n_locations(), false);
    std::deque<std::size_t> queue{a.initial()};
    seen[a.initial()] = true;
    while (!queue.empty()) {
        std::size_t l = queue.front();
        queue.pop_front();
        for (const auto& r : a.rules()[l]) {
            if (seen[r.target]) continue;
            seen[r.target] = true;
            queue.push_back(r.target);
        }
    }
    return seen;
}

bool is_minimal_rna(const Rna& a) {
    auto reach = reachable_locations(a);
    if (std::find(reach.begin(), reach.end(), false) != reach.end()) return false;
    bool minimal = true;
    for_each_state_pair(a, [&](const RnaConfig& c1, const RnaConfig& c2) {
        if (!minimal) return;
        auto d = distinguish(a, a, c1, c2, kPairLimit);
        if (d.exhausted) throw Error("is_minimal_rna: exploration limit exceeded");
        if (!d.word) minimal = false;
    });
    return minimal;
}

OrbitSuite char_set_rna(const Rna& a) {
    if (!is_minimal_rna(a)) throw PreconditionError("char_set_rna: automaton is not minimal");
    OrbitSuite w({SymbolicWord{}});
    for_each_state_pair(a, [&](const RnaConfig& c1, const RnaConfig& c2) {
        if (separates(a, c1, c2, w)) return;
        auto d = distinguish(a, a, c1, c2, kPairLimit);
        if (!d.word) throw Error("char_set_rna: states unexpectedly equivalent");
        auto patterns = w.patterns();
        patterns.push_back(pattern_of(*d.word));
        w = OrbitSuite(std::move(patterns));
    });
    return w;
}

bool is_char_set_rna(const Rna& a, const OrbitSuite& w) {
    if (!w.contains_epsilon()) return false;
    bool ok = true;
    for_each_state_pair(a, [&](const RnaConfig& c1, const RnaConfig& c2) {
        if (!ok || separates(a, c1, c2, w)) return;
        auto d = distinguish(a, a, c1, c2, kPairLimit);
        if (d.exhausted) throw Error("is_char_set_rna: exploration limit exceeded");
        if (d.word) ok = false;
    });
    return ok;
}

std::vector<OrbitVerdict> agree_on_rna(const Rna& spec, const Rna& impl, std::span<const SymbolicWord> patterns) {
    std::vector<OrbitVerdict> out;
    out.reserve(patterns.size());
    for (const auto& s : patterns) {
        bool x = symbolic_run(spec, s).accepting;
        bool y = symbolic_run(impl, s).accepting;
        out.push_back(OrbitVerdict{s, x ? "1" : "0", y ? "1" : "0", x == y});
    }
    return out;
}

std::vector<OrbitVerdict> agree_on_rna(const Rna& spec, const Rna& impl, const OrbitSuite& t) {
    return agree_on_rna(spec, impl, std::span<const SymbolicWord>(t.patterns()));
}

RnaEquivResult equiv_rna(const Rna& a, const Rna& b, std::size_t max_configs) {
    auto d = distinguish(a, b, RnaConfig{a.initial(), {}}, RnaConfig{b.initial(), {}}, max_configs);
    if (d.exhausted) return RnaEquivResult{false, std::nullopt, true};
    if (d.word) return RnaEquivResult{false, pattern_of(*d.word), false};
    return RnaEquivResult{true, std::nullopt, false};
}

} // namespace wmethod
