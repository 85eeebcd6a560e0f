#include "wmethod/rational.hpp"

#include <algorithm>
#include <cctype>

namespace wmethod {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

} // namespace

std::optional<Rat> parse_rat(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    std::string_view digits = num;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (!all_digits(digits) || !all_digits(den)) return std::nullopt;
    mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    Rat r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rat& value) {
    Rat r = value;
    r.canonicalize();
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool is_zero(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatVec RatMatrix::apply(const RatVec& v) const {
    RatVec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Rat s = 0;
        for (std::size_t c = 0; c < cols_; ++c)
            if ((*this)(r, c) != 0 && v[c] != 0) s += (*this)(r, c) * v[c];
        out[r] = s;
    }
    return out;
}

RatVec RatMatrix::apply_left(const RatVec& v) const {
    RatVec out(cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        if (v[r] == 0) continue;
        for (std::size_t c = 0; c < cols_; ++c)
            if ((*this)(r, c) != 0) out[c] += v[r] * (*this)(r, c);
    }
    return out;
}

void EchelonSpan::reduce(RatVec& v, RatVec& combo) const {
    for (const auto& row : rows_) {
        const Rat factor = v[row.pivot];
        if (factor == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j)
            if (row.values[j] != 0) v[j] -= factor * row.values[j];
        for (std::size_t j = 0; j < row.combo.size(); ++j)
            if (row.combo[j] != 0) combo[j] -= factor * row.combo[j];
    }
}

bool EchelonSpan::insert(const RatVec& v) {
    const std::size_t n = rows_.size();
    RatVec residual = v;
    RatVec combo(n + 1);
    combo[n] = 1;
    reduce(residual, combo);
    auto it = std::find_if(residual.begin(), residual.end(), [](const Rat& x) { return x != 0; });
    if (it == residual.end()) return false;
    const std::size_t pivot = static_cast<std::size_t>(it - residual.begin());
    const Rat inv = 1 / residual[pivot];
    for (auto& x : residual) x *= inv;
    for (auto& x : combo) x *= inv;
    // Keep the form fully reduced: clear the new pivot column from older rows.
    for (auto& row : rows_) {
        row.combo.resize(n + 1);
        const Rat factor = row.values[pivot];
        if (factor == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) row.values[j] -= factor * residual[j];
        for (std::size_t j = 0; j <= n; ++j) row.combo[j] -= factor * combo[j];
    }
    rows_.push_back(Row{std::move(residual), std::move(combo), pivot});
    return true;
}

bool EchelonSpan::contains(const RatVec& v) const { return coordinates(v).has_value(); }

std::optional<RatVec> EchelonSpan::coordinates(const RatVec& v) const {
    const std::size_t n = rows_.size();
    // v = Σ v[pivot_i] · row_i when v is in the span; row_i = Σ combo_i[j] · inserted_j.
    RatVec residual = v;
    RatVec coords(n);
    for (const auto& row : rows_) {
        const Rat factor = residual[row.pivot];
        if (factor == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j)
            if (row.values[j] != 0) residual[j] -= factor * row.values[j];
        for (std::size_t j = 0; j < row.combo.size(); ++j)
            if (row.combo[j] != 0) coords[j] += factor * row.combo[j];
    }
    if (!is_zero(residual)) return std::nullopt;
    return coords;
}

} // namespace wmethod
