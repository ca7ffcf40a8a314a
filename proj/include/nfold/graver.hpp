#pragma once

#include <optional>
#include <vector>

#include "nfold/matrix.hpp"

namespace nfold {

/// (2 p Delta + 1)^p, saturating at `huge`.
i64 lemma2_bound(i64 p, i64 delta);

/// S_A * L_B * (2 p_A Delta L_B + 1)^{p_A} with L_B = (2 p_B Delta + 1)^{p_B}, saturating.
i64 nfold_graver_bound(i64 S_A, i64 p_A, i64 p_B, i64 delta);

struct graver_set {
    int_matrix matrix;
    std::vector<std::vector<i64>> elements;  // lexicographically sorted, closed under negation
    i64 norm_cap = 0;                        // l1 radius used during enumeration
};

/// True iff no nonzero cycle z != y fits conformally inside y
/// (such a z, together with y - z, decomposes y into sign-compatible cycles).
bool is_indecomposable(const int_matrix& m, std::span<const i64> y);

/// All indecomposable cycles of m with l1 norm at most min(cap, the certified
/// (2 p delta + 1)^p radius of the finest partition). Throws budget_exceeded
/// when the radius saturates or the node budget runs out.
graver_set graver_basis(const int_matrix& m, std::optional<i64> cap = std::nullopt);

/// Greedy conformal decomposition of a cycle y into elements of g summing to y.
std::vector<std::vector<i64>> conformal_decompose(const int_matrix& m, std::span<const i64> y,
                                                  const graver_set& g);

namespace detail {

/// Nonzero cycles of m with l1 norm <= cap. Prunes subtrees whose every
/// completion strictly contains an already-found cycle conformally (those
/// completions are all decomposable), so the result is a superset of the
/// indecomposable cycles and a subset of all cycles.
std::vector<std::vector<i64>> enumerate_cycle_candidates(const int_matrix& m, i64 cap,
                                                         i64 node_budget);

} // namespace detail

} // namespace nfold
