#pragma once

// Exact rationals and the few dense linear-algebra pieces the weighted module needs.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace wmethod {

/// Arbitrary-precision rational, always kept in canonical (reduced) form.
using Rat = mpq_class;
using RatVec = std::vector<Rat>;

/// Parses `p/q` or an integer; the sign may only precede p. Returns nullopt on
/// malformed input or a zero denominator.
std::optional<Rat> parse_rat(std::string_view text);

/// `p/q`, or just `p` when the denominator is 1.
std::string to_string(const Rat& r);

Rat dot(const RatVec& a, const RatVec& b);
bool is_zero(const RatVec& v);

/// Dense row-major matrix.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RatMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    /// M v (column vector).
    RatVec apply(const RatVec& v) const;
    /// vᵀ M (row vector).
    RatVec apply_left(const RatVec& v) const;

    bool operator==(const RatMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

/// Incremental reduced row-echelon form: answers "is v in the span so far?"
/// and, for members, gives the coordinates with respect to the inserted vectors.
class EchelonSpan {
public:
    explicit EchelonSpan(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return rows_.size(); }

    /// Adds v if it is independent of the vectors inserted so far.
    bool insert(const RatVec& v);
    bool contains(const RatVec& v) const;

    /// Coordinates c with v = Σ c_i · (i-th inserted vector), or nullopt.
    std::optional<RatVec> coordinates(const RatVec& v) const;

private:
    struct Row {
        RatVec values;   // pivot entry normalized to 1
        RatVec combo;    // expresses `values` in terms of the inserted vectors
        std::size_t pivot;
    };

    // Reduces v against every row; `combo` tracks the subtracted combination.
    void reduce(RatVec& v, RatVec& combo) const;

    std::size_t dim_;
    std::vector<Row> rows_;
};

} // namespace wmethod
