#include "nfold/matrix.hpp"

#include "nfold/errors.hpp"

namespace nfold {

int_matrix int_matrix::from_rows(const std::vector<std::vector<i64>>& rows) {
    std::size_t m = rows.size();
    std::size_t n = m == 0 ? 0 : rows[0].size();
    for (const auto& r : rows)
        if (r.size() != n) throw invalid_input("ragged matrix rows");
    int_matrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a.at(i, j) = rows[i][j];
    return a;
}

i64 int_matrix::max_abs() const {
    i64 m = 0;
    for (i64 x : data_) {
        i64 a = x < 0 ? checked_neg(x) : x;
        if (a > m) m = a;
    }
    return m;
}

std::vector<i64> int_matrix::mul(std::span<const i64> x) const {
    if (x.size() != cols_) throw invalid_input("matrix-vector dimension mismatch");
    std::vector<i64> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        i64 s = 0;
        const i64* row = data_.data() + r * cols_;
        for (std::size_t c = 0; c < cols_; ++c)
            if (row[c] != 0) s = checked_add(s, checked_mul(row[c], x[c]));
        out[r] = s;
    }
    return out;
}

bool int_matrix::is_zero_row(std::size_t r) const {
    for (std::size_t c = 0; c < cols_; ++c)
        if (at(r, c) != 0) return false;
    return true;
}

int_matrix int_matrix::hconcat(const int_matrix& other) const {
    if (rows_ != other.rows_) throw invalid_input("hconcat row mismatch");
    int_matrix out(rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = at(r, c);
        for (std::size_t c = 0; c < other.cols_; ++c) out.at(r, cols_ + c) = other.at(r, c);
    }
    return out;
}

bool sign_compatible(std::span<const i64> u, std::span<const i64> v) {
    if (u.size() != v.size()) throw invalid_input("sign_compatible dimension mismatch");
    for (std::size_t i = 0; i < u.size(); ++i) {
        if ((u[i] > 0 && v[i] < 0) || (u[i] < 0 && v[i] > 0)) return false;
    }
    return true;
}

bool conformal_leq(std::span<const i64> z, std::span<const i64> y) {
    if (z.size() != y.size()) throw invalid_input("conformal_leq dimension mismatch");
    for (std::size_t i = 0; i < z.size(); ++i) {
        if ((z[i] > 0 && (y[i] < z[i])) || (z[i] < 0 && (y[i] > z[i]))) return false;
    }
    return true;
}

} // namespace nfold
