#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nfold/matrix.hpp"

namespace nfold {

enum class objective_kind { linear_max, sep_convex_min };

/// Objective over all variables: either max c.x, or min sum a_j x_j^2 + b_j x_j with a_j >= 0.
struct objective {
    objective_kind kind = objective_kind::linear_max;
    std::vector<i64> c;  // linear_max
    std::vector<i64> a;  // sep_convex_min, quadratic coefficients
    std::vector<i64> b;  // sep_convex_min, linear coefficients

    std::size_t size() const { return kind == objective_kind::linear_max ? c.size() : a.size(); }
};

/// One column block: an r x t top matrix, an s x t local matrix, its right-hand side and box.
struct brick {
    int_matrix A;              // r x t
    int_matrix B;              // s x t (s may be 0)
    std::vector<i64> b_local;  // length s
    std::vector<i64> lower;    // length t
    std::vector<i64> upper;    // length t

    std::size_t width() const { return A.cols(); }
    std::size_t local_rows() const { return B.rows(); }
};

struct nfold_instance {
    std::vector<brick> bricks;
    std::vector<i64> b_top;  // length r
    objective obj;

    std::size_t top_rows() const { return b_top.size(); }
    std::size_t total_cols() const;
    std::size_t total_rows() const;

    /// Largest absolute entry over all A and B blocks.
    i64 delta() const;

    /// max_j (upper_j - lower_j).
    i64 box_width() const;

    /// Throws invalid_input when any structural invariant is broken.
    void validate() const;
};

enum class solve_status { optimal, infeasible };

struct solution {
    solve_status status = solve_status::infeasible;
    std::vector<i64> x;
    i64 objective_value = 0;  // user sense: c.x for linear_max, the minimum for sep_convex_min
    i64 iterations = 0;
};

/// Full (r + sum s_i) x (sum t_i) constraint matrix: A blocks on top, B blocks on the diagonal.
int_matrix assemble(const nfold_instance& inst);

/// True iff the block system holds exactly and lower <= x <= upper entrywise.
bool check_feasible(const nfold_instance& inst, std::span<const i64> x);

/// User-sense objective value at x.
i64 evaluate_objective(const nfold_instance& inst, std::span<const i64> x);

/// Internal maximization sense: c.x, or the negated separable convex value.
i64 objective_max_sense(const nfold_instance& inst, std::span<const i64> x);

/// log2(||u-l||inf) * log2(c_max); 0 when either argument is <= 1. Linear objectives only.
double input_measure(const nfold_instance& inst);

nfold_instance parse_instance_json(const std::string& text);
nfold_instance load_instance_file(const std::string& path);
std::string instance_to_json(const nfold_instance& inst);

} // namespace nfold
