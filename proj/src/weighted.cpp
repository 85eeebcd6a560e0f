#include "wmethod/weighted.hpp"

#include <algorithm>

#include "wmethod/error.hpp"

namespace wmethod {

Wa::Wa(Alphabet alphabet, std::size_t dim, RatVec s0, std::vector<RatMatrix> matrices, RatVec f)
    : alphabet_(std::move(alphabet)), dim_(dim), s0_(std::move(s0)), matrices_(std::move(matrices)), f_(std::move(f)) {
    if (alphabet_.size() == 0) throw MismatchError("wa: empty alphabet");
    if (s0_.size() != dim_) throw MismatchError("wa: initial vector has wrong length");
    if (f_.size() != dim_) throw MismatchError("wa: final vector has wrong length");
    if (matrices_.size() != alphabet_.size()) throw MismatchError("wa: need exactly one matrix per symbol");
    for (const auto& m : matrices_)
        if (m.rows() != dim_ || m.cols() != dim_) throw MismatchError("wa: transition matrix has wrong shape");
}

RatVec wa_state(const Wa& a, const RatVec& s, const Word& w) {
    RatVec v = s;
    for (Symbol x : w) {
        if (x >= a.alphabet().size()) throw MismatchError("wa: symbol outside alphabet");
        v = a.matrix(x).apply(v);
    }
    return v;
}

Rat wa_lang_from(const Wa& a, const RatVec& s, const Word& w) { return dot(a.final(), wa_state(a, s, w)); }

Rat wa_lang(const Wa& a, const Word& w) { return wa_lang_from(a, a.initial(), w); }

namespace {

enum class Direction { forward, backward };

// Level-synchronous saturation: candidates of one length are tried in shortlex
// order before any longer word, so witnesses are shortlex-minimal per level.
VecSpaceBasis saturate(const Wa& a, const RatVec& seed, Direction dir) {
    VecSpaceBasis basis;
    EchelonSpan span(a.dim());
    if (!span.insert(seed)) return basis;
    basis.vectors.push_back(seed);
    basis.witnesses.push_back(Word{});

    std::vector<std::size_t> level{0};
    while (!level.empty()) {
        struct Candidate {
            Word word;
            RatVec vec;
        };
        std::vector<Candidate> candidates;
        for (std::size_t idx : level) {
            for (Symbol x = 0; x < a.alphabet().size(); ++x) {
                Candidate c;
                const Word& base = basis.witnesses[idx];
                if (dir == Direction::forward) {
                    c.word = base;
                    c.word.push_back(x);
                    c.vec = a.matrix(x).apply(basis.vectors[idx]);
                } else {
                    c.word.push_back(x);
                    c.word.insert(c.word.end(), base.begin(), base.end());
                    c.vec = a.matrix(x).apply_left(basis.vectors[idx]);
                }
                candidates.push_back(std::move(c));
            }
        }
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const Candidate& l, const Candidate& r) { return shortlex_less(l.word, r.word); });
        level.clear();
        for (auto& c : candidates) {
            if (!span.insert(c.vec)) continue;
            level.push_back(basis.vectors.size());
            basis.vectors.push_back(std::move(c.vec));
            basis.witnesses.push_back(std::move(c.word));
        }
    }
    return basis;
}

std::size_t rank_of(std::size_t dim, const std::vector<RatVec>& vectors) {
    EchelonSpan span(dim);
    for (const auto& v : vectors) span.insert(v);
    return span.rank();
}

// Restricts a to the span of `basis` (columns of the change of basis), which
// must be invariant under every M(a).
Wa forward_reduce(const Wa& a, const VecSpaceBasis& basis) {
    const std::size_t r = basis.rank();
    EchelonSpan span(a.dim());
    for (const auto& v : basis.vectors) span.insert(v);

    RatVec s0(r);
    if (r > 0) s0 = *span.coordinates(a.initial());
    std::vector<RatMatrix> mats;
    for (Symbol x = 0; x < a.alphabet().size(); ++x) {
        RatMatrix m(r, r);
        for (std::size_t j = 0; j < r; ++j) {
            auto col = span.coordinates(a.matrix(x).apply(basis.vectors[j]));
            for (std::size_t i = 0; i < r; ++i) m(i, j) = (*col)[i];
        }
        mats.push_back(std::move(m));
    }
    RatVec f(r);
    for (std::size_t j = 0; j < r; ++j) f[j] = dot(a.final(), basis.vectors[j]);
    return Wa(a.alphabet(), r, std::move(s0), std::move(mats), std::move(f));
}

// Quotients a by the kernel of the observation map; `rows` span the observation space.
Wa backward_reduce(const Wa& a, const VecSpaceBasis& rows) {
    const std::size_t r = rows.rank();
    EchelonSpan span(a.dim());
    for (const auto& v : rows.vectors) span.insert(v);

    RatVec s0(r);
    for (std::size_t i = 0; i < r; ++i) s0[i] = dot(rows.vectors[i], a.initial());
    std::vector<RatMatrix> mats;
    for (Symbol x = 0; x < a.alphabet().size(); ++x) {
        RatMatrix m(r, r);
        for (std::size_t i = 0; i < r; ++i) {
            auto coords = span.coordinates(a.matrix(x).apply_left(rows.vectors[i]));
            for (std::size_t j = 0; j < r; ++j) m(i, j) = (*coords)[j];
        }
        mats.push_back(std::move(m));
    }
    RatVec f(r);
    if (r > 0) f = *span.coordinates(a.final());
    return Wa(a.alphabet(), r, std::move(s0), std::move(mats), std::move(f));
}

} // namespace

VecSpaceBasis forward_basis(const Wa& a) { return saturate(a, a.initial(), Direction::forward); }

VecSpaceBasis backward_basis(const Wa& a) { return saturate(a, a.final(), Direction::backward); }

bool is_state_cover_wa(const Wa& a, const Suite& p) {
    if (!p.contains_epsilon()) return false;
    std::vector<RatVec> vectors;
    for (const auto& w : p) vectors.push_back(wa_state(a, a.initial(), w));
    return rank_of(a.dim(), vectors) == a.dim();
}

bool is_char_set_wa(const Wa& a, const Suite& w) {
    if (!w.contains_epsilon()) return false;
    std::vector<RatVec> rows;
    for (const auto& v : w) {
        RatVec row = a.final();
        for (auto it = v.rbegin(); it != v.rend(); ++it) row = a.matrix(*it).apply_left(row);
        rows.push_back(std::move(row));
    }
    return rank_of(a.dim(), rows) == backward_basis(a).rank();
}

bool is_minimal_wa(const Wa& a) { return backward_basis(a).rank() == a.dim(); }

Wa minimize_wa(const Wa& a) {
    auto fwd = forward_basis(a);
    Wa reachable = fwd.rank() == a.dim() ? a : forward_reduce(a, fwd);
    auto bwd = backward_basis(reachable);
    return bwd.rank() == reachable.dim() ? reachable : backward_reduce(reachable, bwd);
}

WaEquivResult equiv_wa(const Wa& a, const Wa& b) {
    if (a.alphabet() != b.alphabet()) throw MismatchError("equiv_wa: alphabets differ");
    const std::size_t n = a.dim() + b.dim();
    RatVec s0(n), f(n);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        s0[i] = a.initial()[i];
        f[i] = a.final()[i];
    }
    for (std::size_t i = 0; i < b.dim(); ++i) {
        s0[a.dim() + i] = b.initial()[i];
        f[a.dim() + i] = -b.final()[i];
    }
    std::vector<RatMatrix> mats;
    for (Symbol x = 0; x < a.alphabet().size(); ++x) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = a.matrix(x)(i, j);
        for (std::size_t i = 0; i < b.dim(); ++i)
            for (std::size_t j = 0; j < b.dim(); ++j) m(a.dim() + i, a.dim() + j) = b.matrix(x)(i, j);
        mats.push_back(std::move(m));
    }
    Wa diff(a.alphabet(), n, std::move(s0), std::move(mats), std::move(f));
    auto basis = forward_basis(diff);
    for (std::size_t i = 0; i < basis.rank(); ++i)
        if (dot(diff.final(), basis.vectors[i]) != 0) return WaEquivResult{false, basis.witnesses[i]};
    return WaEquivResult{true, std::nullopt};
}

std::vector<Verdict> agree_on_wa(const Wa& spec, const Wa& impl, std::span<const Word> words) {
    if (spec.alphabet() != impl.alphabet()) throw MismatchError("agree_on_wa: alphabets differ");
    std::vector<Verdict> out;
    out.reserve(words.size());
    for (const auto& w : words) {
        Rat s = wa_lang(spec, w);
        Rat i = wa_lang(impl, w);
        out.push_back(Verdict{w, to_string(s), to_string(i), s == i});
    }
    return out;
}

std::vector<Verdict> agree_on_wa(const Wa& spec, const Wa& impl, const Suite& t) {
    if (t.alphabet() != spec.alphabet()) throw MismatchError("agree_on_wa: suite alphabet differs");
    return agree_on_wa(spec, impl, std::span<const Word>(t.words()));
}

bool in_fault_domain_wa(const Wa& impl, const Suite& p, std::size_t k) {
    return is_state_cover_wa(impl, concat_suites(p, words_upto(impl.alphabet(), k)));
}

} // namespace wmethod
