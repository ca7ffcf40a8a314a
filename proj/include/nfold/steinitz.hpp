#pragma once

#include <vector>

#include "nfold/ints.hpp"

namespace nfold {

/// Reorders zero-sum vectors (each ||v_i||inf <= delta) so that every prefix
/// sum stays within m*delta in the infinity norm. Greedy first, exhaustive
/// backtracking as a fallback; a valid order always exists.
/// Returns the permutation as positions into the input sequence.
std::vector<std::size_t> steinitz_reorder(const std::vector<std::vector<i64>>& vectors, i64 delta);

/// Largest prefix-sum infinity norm of the given ordering.
i64 max_prefix_norm(const std::vector<std::vector<i64>>& vectors,
                    const std::vector<std::size_t>& order);

} // namespace nfold
