#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nfold/ints.hpp"

namespace nfold {

/// Dense exact-integer matrix, row-major. All arithmetic is overflow-checked.
class int_matrix {
public:
    int_matrix() = default;
    int_matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static int_matrix from_rows(const std::vector<std::vector<i64>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    i64 at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    i64& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const i64> row(std::size_t r) const {
        return std::span<const i64>(data_.data() + r * cols_, cols_);
    }

    /// Largest absolute entry (0 for empty matrices).
    i64 max_abs() const;

    /// Overflow-checked matrix-vector product; x.size() must equal cols().
    std::vector<i64> mul(std::span<const i64> x) const;

    bool is_zero_row(std::size_t r) const;

    /// [this | other] side by side; row counts must match.
    int_matrix hconcat(const int_matrix& other) const;

    bool operator==(const int_matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<i64> data_;
};

inline i64 l1_norm(std::span<const i64> v) {
    i64 s = 0;
    for (i64 x : v) s = checked_add(s, x < 0 ? checked_neg(x) : x);
    return s;
}

inline i64 linf_norm(std::span<const i64> v) {
    i64 m = 0;
    for (i64 x : v) {
        i64 a = x < 0 ? checked_neg(x) : x;
        if (a > m) m = a;
    }
    return m;
}

inline bool is_zero(std::span<const i64> v) {
    for (i64 x : v)
        if (x != 0) return false;
    return true;
}

/// Coordinatewise sign compatibility: u_i * v_i >= 0 for all i.
bool sign_compatible(std::span<const i64> u, std::span<const i64> v);

/// z conformal to y: sign-compatible and |z_i| <= |y_i| everywhere.
bool conformal_leq(std::span<const i64> z, std::span<const i64> y);

} // namespace nfold
