#include "wmethod/fsm.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "wmethod/error.hpp"

namespace wmethod {

const char* to_string(FsmKind kind) {
    switch (kind) {
    case FsmKind::dfa: return "dfa";
    case FsmKind::moore: return "moore";
    case FsmKind::mealy: return "mealy";
    }
    return "?";
}

std::string FsmValue::str() const {
    if (outputs.size() == 1) return outputs.front();
    std::string out = "[";
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        if (i > 0) out += ',';
        out += outputs[i];
    }
    return out + "]";
}

Fsm::Fsm(FsmKind kind, Alphabet alphabet, std::size_t n_states, State initial,
         std::vector<State> delta, std::vector<std::string> outputs)
    : kind_(kind), alphabet_(std::move(alphabet)), n_states_(n_states), initial_(initial),
      delta_(std::move(delta)), outputs_(std::move(outputs)) {
    if (alphabet_.size() == 0) throw MismatchError("fsm: empty alphabet");
    if (n_states_ == 0) throw MismatchError("fsm: at least one state is required");
    if (initial_ >= n_states_) throw MismatchError("fsm: initial state out of range");
    if (delta_.size() != n_states_ * alphabet_.size())
        throw MismatchError("fsm: transition table must have n_states * |alphabet| entries");
    for (State t : delta_)
        if (t >= n_states_) throw MismatchError("fsm: transition target " + std::to_string(t) + " out of range");
    std::size_t want = kind_ == FsmKind::mealy ? n_states_ * alphabet_.size() : n_states_;
    if (outputs_.size() != want) throw MismatchError("fsm: output table has wrong size");
    if (kind_ == FsmKind::dfa)
        for (const auto& o : outputs_)
            if (o != "0" && o != "1") throw MismatchError("dfa: outputs must be 0 or 1, got '" + o + "'");
}

FsmValue Fsm::row(State q) const {
    if (kind_ != FsmKind::mealy) return FsmValue{{outputs_[q]}};
    FsmValue v;
    v.outputs.reserve(alphabet_.size());
    for (Symbol a = 0; a < alphabet_.size(); ++a) v.outputs.push_back(outputs_[index(q, a)]);
    return v;
}

Fsm Fsm::with_transition(State q, Symbol a, State target) const {
    auto delta = delta_;
    delta.at(index(q, a)) = target;
    return Fsm(kind_, alphabet_, n_states_, initial_, std::move(delta), outputs_);
}

Fsm Fsm::with_state_output(State q, std::string value) const {
    if (kind_ == FsmKind::mealy) throw MismatchError("mealy machines have transition outputs");
    auto outputs = outputs_;
    outputs.at(q) = std::move(value);
    return Fsm(kind_, alphabet_, n_states_, initial_, delta_, std::move(outputs));
}

Fsm Fsm::with_transition_output(State q, Symbol a, std::string value) const {
    if (kind_ != FsmKind::mealy) throw MismatchError("only mealy machines have transition outputs");
    auto outputs = outputs_;
    outputs.at(index(q, a)) = std::move(value);
    return Fsm(kind_, alphabet_, n_states_, initial_, delta_, std::move(outputs));
}

State run_from(const Fsm& m, State q, const Word& w) {
    for (Symbol a : w) {
        if (a >= m.alphabet().size()) throw MismatchError("run: symbol outside alphabet");
        q = m.next(q, a);
    }
    return q;
}

State run(const Fsm& m, const Word& w) { return run_from(m, m.initial(), w); }

FsmValue lang_value(const Fsm& m, const Word& w) { return m.row(run(m, w)); }

std::vector<std::string> output_trace(const Fsm& m, const Word& w) {
    std::vector<std::string> trace;
    State q = m.initial();
    for (Symbol a : w) {
        if (a >= m.alphabet().size()) throw MismatchError("output_trace: symbol outside alphabet");
        trace.push_back(m.kind() == FsmKind::mealy ? m.transition_output(q, a) : m.state_output(m.next(q, a)));
        q = m.next(q, a);
    }
    return trace;
}

namespace {

// BFS from the initial state; parent links give shortest access words.
struct BfsTree {
    std::vector<State> order;
    std::vector<std::optional<std::pair<State, Symbol>>> parent;
    std::vector<bool> seen;
};

BfsTree bfs(const Fsm& m) {
    BfsTree t;
    t.parent.assign(m.n_states(), std::nullopt);
    t.seen.assign(m.n_states(), false);
    std::deque<State> queue{m.initial()};
    t.seen[m.initial()] = true;
    while (!queue.empty()) {
        State q = queue.front();
        queue.pop_front();
        t.order.push_back(q);
        for (Symbol a = 0; a < m.alphabet().size(); ++a) {
            State r = m.next(q, a);
            if (t.seen[r]) continue;
            t.seen[r] = true;
            t.parent[r] = std::make_pair(q, a);
            queue.push_back(r);
        }
    }
    return t;
}

Word access_word(const BfsTree& t, State q) {
    Word w;
    while (t.parent[q]) {
        w.push_back(t.parent[q]->second);
        q = t.parent[q]->first;
    }
    std::reverse(w.begin(), w.end());
    return w;
}

// Renumbers keys densely by first occurrence.
template <class Key>
std::vector<std::size_t> densify(const std::vector<Key>& keys, std::size_t& count) {
    std::map<Key, std::size_t> ids;
    std::vector<std::size_t> out(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        auto [it, inserted] = ids.emplace(keys[i], ids.size());
        out[i] = it->second;
    }
    count = ids.size();
    return out;
}

void require_compatible(const Fsm& a, const Fsm& b, const char* what) {
    if (a.kind() != b.kind()) throw MismatchError(std::string(what) + ": machine kinds differ");
    if (a.alphabet() != b.alphabet()) throw MismatchError(std::string(what) + ": alphabets differ");
}

} // namespace

std::vector<bool> reachable_states(const Fsm& m) { return bfs(m).seen; }

std::vector<std::size_t> state_equivalence(const Fsm& m) {
    const std::size_t n = m.n_states();
    std::vector<FsmValue> rows;
    rows.reserve(n);
    for (State q = 0; q < n; ++q) rows.push_back(m.row(q));
    std::size_t count = 0;
    std::vector<std::vector<std::string>> init(n);
    for (State q = 0; q < n; ++q) init[q] = rows[q].outputs;
    auto block = densify(init, count);

    for (;;) {
        std::vector<std::vector<std::size_t>> sig(n);
        for (State q = 0; q < n; ++q) {
            sig[q].push_back(block[q]);
            for (Symbol a = 0; a < m.alphabet().size(); ++a) sig[q].push_back(block[m.next(q, a)]);
        }
        std::size_t next_count = 0;
        auto next = densify(sig, next_count);
        if (next_count == count) return next;
        block = std::move(next);
        count = next_count;
    }
}

bool is_minimal(const Fsm& m) {
    auto reach = reachable_states(m);
    if (std::find(reach.begin(), reach.end(), false) != reach.end()) return false;
    auto eq = state_equivalence(m);
    return static_cast<std::size_t>(*std::max_element(eq.begin(), eq.end())) + 1 == m.n_states();
}

Fsm minimize(const Fsm& m) {
    auto eq = state_equivalence(m);
    auto tree = bfs(m);
    const std::size_t nsym = m.alphabet().size();

    // New ids follow the BFS order of the first state of each reachable block.
    std::map<std::size_t, State> block_id;
    std::vector<State> representative;
    for (State q : tree.order) {
        if (block_id.emplace(eq[q], static_cast<State>(representative.size())).second) representative.push_back(q);
    }
    const std::size_t n = representative.size();
    std::vector<State> delta(n * nsym);
    std::vector<std::string> outputs;
    for (std::size_t i = 0; i < n; ++i) {
        State q = representative[i];
        for (Symbol a = 0; a < nsym; ++a) delta[i * nsym + a] = block_id.at(eq[m.next(q, a)]);
        if (m.kind() == FsmKind::mealy) {
            for (Symbol a = 0; a < nsym; ++a) outputs.push_back(m.transition_output(q, a));
        } else {
            outputs.push_back(m.state_output(q));
        }
    }
    return Fsm(m.kind(), m.alphabet(), n, 0, std::move(delta), std::move(outputs));
}

Suite state_cover(const Fsm& m) {
    auto tree = bfs(m);
    for (State q = 0; q < m.n_states(); ++q)
        if (!tree.seen[q]) throw PreconditionError("state_cover: state " + std::to_string(q) + " is unreachable");
    std::vector<Word> words;
    for (State q : tree.order) words.push_back(access_word(tree, q));
    return Suite(m.alphabet(), std::move(words));
}

Suite char_set(const Fsm& m) {
    if (!is_minimal(m)) throw PreconditionError("char_set: machine is not minimal");
    const std::size_t n = m.n_states();
    const std::size_t nsym = m.alphabet().size();

    std::vector<FsmValue> rows(n);
    for (State q = 0; q < n; ++q) rows[q] = m.row(q);
    std::vector<std::pair<State, State>> pairs;
    for (State p = 0; p < n; ++p)
        for (State q = p + 1; q < n; ++q) pairs.emplace_back(p, q);
    auto index = [n](State p, State q) { return p < q ? p * n + q : q * n + p; };

    // Shortlex-least among the shortest words separating each pair, built level by
    // level. Every shortest a·u found on the way is kept as a candidate.
    std::vector<std::optional<Word>> sep(n * n);
    std::vector<Word> candidates;
    std::size_t open = 0;
    for (auto [p, q] : pairs) {
        if (rows[p] != rows[q]) sep[index(p, q)] = Word{};
        else ++open;
    }
    for (std::size_t len = 1; open > 0; ++len) {
        std::vector<std::pair<std::size_t, Word>> found;
        for (auto [p, q] : pairs) {
            if (sep[index(p, q)]) continue;
            std::optional<Word> best;
            for (Symbol a = 0; a < nsym; ++a) {
                State pa = m.next(p, a), qa = m.next(q, a);
                if (pa == qa) continue;
                const auto& u = sep[index(pa, qa)];
                if (!u || u->size() != len - 1) continue;
                Word v{a};
                v.insert(v.end(), u->begin(), u->end());
                candidates.push_back(v);
                if (!best || v < *best) best = std::move(v);
            }
            if (best) found.emplace_back(index(p, q), std::move(*best));
        }
        if (found.empty()) break;
        for (auto& [i, w] : found) sep[i] = std::move(w);
        open -= found.size();
    }

    std::sort(candidates.begin(), candidates.end(), shortlex_less);
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // separates[c][i]: candidate c tells pairs[i] apart.
    std::vector<std::vector<bool>> separates(candidates.size(), std::vector<bool>(pairs.size()));
    std::vector<std::size_t> reach(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        std::vector<FsmValue> after(n);
        for (State q = 0; q < n; ++q) after[q] = m.row(run_from(m, q, candidates[c]));
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            separates[c][i] = after[pairs[i].first] != after[pairs[i].second];
            reach[c] += separates[c][i];
        }
    }

    // Greedy set cover: most newly separated pairs, then most pairs overall, then shortlex.
    std::vector<Word> w{Word{}};
    std::vector<bool> covered(pairs.size());
    std::size_t left = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        covered[i] = rows[pairs[i].first] != rows[pairs[i].second];
        left += !covered[i];
    }
    while (left > 0) {
        std::size_t best = 0, best_gain = 0;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            std::size_t gain = 0;
            for (std::size_t i = 0; i < pairs.size(); ++i) gain += !covered[i] && separates[c][i];
            if (gain > best_gain || (gain == best_gain && gain > 0 && reach[c] > reach[best])) {
                best = c;
                best_gain = gain;
            }
        }
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (!covered[i] && separates[best][i]) {
                covered[i] = true;
                --left;
            }
        w.push_back(candidates[best]);
    }
    return Suite(m.alphabet(), std::move(w));
}

bool is_char_set(const Fsm& m, const Suite& w) {
    if (!w.contains_epsilon()) throw PreconditionError("is_char_set: the empty word must be in the set");
    if (w.alphabet() != m.alphabet()) throw MismatchError("is_char_set: alphabet mismatch");
    auto eq = state_equivalence(m);
    const std::size_t n = m.n_states();
    // Signature of a state on w; two states are w-equivalent iff signatures match.
    std::vector<std::vector<FsmValue>> sig(n);
    for (State q = 0; q < n; ++q)
        for (const auto& v : w) sig[q].push_back(m.row(run_from(m, q, v)));
    for (State p = 0; p < n; ++p)
        for (State q = p + 1; q < n; ++q)
            if (eq[p] != eq[q] && sig[p] == sig[q]) return false;
    return true;
}

std::optional<CoverMap> find_cover_map(const Fsm& m, const Suite& p) {
    std::map<State, Word> reach;
    for (const auto& w : p) reach.emplace(run(m, w), w);
    CoverMap delta_p;
    for (const auto& w : p) {
        State q = run(m, w);
        for (Symbol a = 0; a < m.alphabet().size(); ++a) {
            auto it = reach.find(m.next(q, a));
            if (it == reach.end()) return std::nullopt;
            delta_p.emplace(std::make_pair(w, a), it->second);
        }
    }
    return delta_p;
}

bool verify_weak_cover(const Fsm& m, const Suite& p, const CoverMap& delta_p) {
    if (!p.contains_epsilon()) throw PreconditionError("verify_weak_cover: the empty word must be in P");
    for (const auto& w : p) {
        for (Symbol a = 0; a < m.alphabet().size(); ++a) {
            auto it = delta_p.find({w, a});
            if (it == delta_p.end())
                throw PreconditionError("verify_weak_cover: delta_P undefined on (" + format_word(m.alphabet(), w) +
                                        ", " + m.alphabet().name(a) + ")");
            if (!p.contains(it->second))
                throw PreconditionError("verify_weak_cover: delta_P value " + format_word(m.alphabet(), it->second) +
                                        " is not in P");
            Word wa = w;
            wa.push_back(a);
            if (run(m, it->second) != run(m, wa)) return false;
        }
    }
    return true;
}

std::vector<Verdict> agree_on(const Fsm& spec, const Fsm& impl, std::span<const Word> words) {
    require_compatible(spec, impl, "agree_on");
    std::vector<Verdict> out;
    out.reserve(words.size());
    for (const auto& w : words) {
        auto s = lang_value(spec, w);
        auto i = lang_value(impl, w);
        bool pass = s == i;
        out.push_back(Verdict{w, s.str(), i.str(), pass});
    }
    return out;
}

std::vector<Verdict> agree_on(const Fsm& spec, const Fsm& impl, const Suite& t) {
    if (t.alphabet() != spec.alphabet()) throw MismatchError("agree_on: suite alphabet differs from the machine's");
    return agree_on(spec, impl, std::span<const Word>(t.words()));
}

EquivResult equiv(const Fsm& a, const Fsm& b) {
    require_compatible(a, b, "equiv");
    using Pair = std::pair<State, State>;
    std::map<Pair, std::optional<std::pair<Pair, Symbol>>> parent;
    std::deque<Pair> queue;
    Pair start{a.initial(), b.initial()};
    parent.emplace(start, std::nullopt);
    queue.push_back(start);
    while (!queue.empty()) {
        Pair cur = queue.front();
        queue.pop_front();
        if (a.row(cur.first) != b.row(cur.second)) {
            Word w;
            for (Pair at = cur; parent.at(at); at = parent.at(at)->first) w.push_back(parent.at(at)->second);
            std::reverse(w.begin(), w.end());
            return EquivResult{false, std::move(w)};
        }
        for (Symbol s = 0; s < a.alphabet().size(); ++s) {
            Pair nxt{a.next(cur.first, s), b.next(cur.second, s)};
            if (parent.emplace(nxt, std::make_pair(cur, s)).second) queue.push_back(nxt);
        }
    }
    return EquivResult{true, std::nullopt};
}

} // namespace wmethod
