#pragma once

#include <functional>
#include <optional>

#include "nfold/instance.hpp"

namespace nfold {

struct step_result {
    std::vector<i64> direction;  // y over all columns, A*y = 0 overall, B_i*y_i = 0 per brick
    i64 gain = 0;                // objective improvement of x + lambda*y, maximization sense
};

/// l1 cap the augmentation loop uses: the partitioned-matrix Graver bound,
/// clamped by the trivially valid box cap sum(t_i) * ||u-l||inf.
i64 solver_norm_cap(const nfold_instance& inst);

/// Exact best augmenting direction at step length lambda within the l1 cap g1,
/// by per-brick kernel enumeration and a DP over accumulated top-row sums.
/// Absent when no direction has positive gain. Ties break toward the
/// lexicographically smallest concatenated direction.
std::optional<step_result> best_step(const nfold_instance& inst, std::span<const i64> x,
                                     i64 lambda, i64 g1);

/// Feasible start via clamp(0) plus a slack-variable auxiliary solve.
/// Empty optional means the instance is infeasible.
std::optional<std::vector<i64>> initial_feasible(const nfold_instance& inst);

/// Augment from a feasible point to optimality with the power-of-two lambda
/// schedule. Every accepted step is re-checked for feasibility, strict
/// improvement, A*y = 0 and the norm cap.
solution augment_to_optimal(const nfold_instance& inst, std::vector<i64> x0,
                            const std::function<void(const step_result&, i64)>* step_log = nullptr);

/// Two-phase exact solve: initial_feasible then augment_to_optimal.
solution solve(const nfold_instance& inst);

} // namespace nfold
