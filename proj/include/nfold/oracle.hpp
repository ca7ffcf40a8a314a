#pragma once

#include <optional>

#include "nfold/coloring.hpp"
#include "nfold/graver.hpp"
#include "nfold/instance.hpp"
#include "nfold/scheduling.hpp"

namespace nfold {

/// Exhaustive enumeration of the whole box; exact optimum or infeasible.
/// Hard budget: at most 10^7 points.
solution oracle_ip_solve(const nfold_instance& inst);

/// Definition-based Graver set sharing only the matrix primitives with the
/// production path: own partition scan, own radius, own filter.
graver_set oracle_graver(const int_matrix& m);

/// Exact optimum over all job->machine assignments (block-order start times
/// for the release/deadline variants). Empty optional = no feasible schedule.
std::optional<i64> oracle_schedule(const uniform_instance& inst, sched_variant variant);
std::optional<i64> oracle_rcmax(const unrelated_instance& inst);

/// Exact weighted-completion optimum by assignment enumeration + per-machine
/// Smith ordering.
rational oracle_qswc(const uniform_instance& inst);

/// Minimum color sum over all proper colorings with at most |V| colors.
i64 oracle_mscol(const graph& g);

/// Same minimum restricted to colorings that keep independent twin classes
/// monochromatic (the encoded model's convention).
i64 oracle_mscol_class_restricted(const graph& g);

} // namespace nfold
