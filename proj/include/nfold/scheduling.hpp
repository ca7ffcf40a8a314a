#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nfold/instance.hpp"

namespace nfold {

struct job_type {
    i64 processing = 1;          // p_j > 0
    i64 count = 0;               // n_j >= 0
    std::optional<i64> weight;   // w_j (weighted completion time)
    std::optional<i64> release;  // r_j
    std::optional<i64> deadline; // d_j
};

/// Uniformly related machines: per-machine integer speeds, high-multiplicity job types.
struct uniform_instance {
    std::vector<i64> speeds;              // s_i >= 1
    std::vector<job_type> types;
    std::vector<i64> capacities;          // per machine, used by the capacity variant only

    std::size_t machines() const { return speeds.size(); }
    i64 total_jobs() const;
    i64 total_work() const;  // sum p_j n_j
    i64 p_max() const;
    void validate() const;
};

/// Unrelated machines grouped into kinds; entry absent means the kind cannot run the type.
struct unrelated_instance {
    std::vector<std::size_t> machine_kinds;              // machine -> kind index
    std::vector<std::vector<std::optional<i64>>> ptimes; // kind x type processing times
    std::vector<i64> counts;                             // n_j per type

    std::size_t machines() const { return machine_kinds.size(); }
    std::size_t kinds() const { return ptimes.size(); }
    std::size_t type_count() const { return counts.size(); }
    void validate() const;
};

enum class sched_variant { cmax, cmin, cmax_capacity, cmax_release, cmax_deadline, rcmax, qswc };

sched_variant parse_variant(const std::string& name);
std::string variant_name(sched_variant v);

/// Machine-level view of a decoded solution.
struct machine_schedule {
    std::vector<i64> counts;            // per original type
    std::vector<i64> starts;            // per original type, release/deadline variants only
};

struct schedule {
    solve_status status = solve_status::infeasible;
    std::vector<machine_schedule> machines;
    rational objective;  // decision-T optimum, min load, or sum of weighted completion times
};

/// Column bookkeeping tying IP variables back to machines and types.
struct encoded_schedule {
    nfold_instance ip;
    sched_variant variant = sched_variant::cmax;
    i64 horizon = 0;                       // the probed T (unused for qswc)
    std::size_t machine_count = 0;
    std::size_t type_count = 0;
    std::vector<std::size_t> type_order;   // brick column j holds x of type type_order[j]
    std::size_t x_offset = 0;              // within a brick
    std::size_t s_offset = 0;              // start-time columns, release/deadline
    rational objective_scale{1, 1};        // qswc: IP objective = scale * true objective
};

/// Decision IP for one of the uniform variants at threshold T.
encoded_schedule encode_decision(const uniform_instance& inst, sched_variant variant, i64 T);

/// Decision IP for unrelated machines at threshold T.
encoded_schedule encode_rcmax(const unrelated_instance& inst, i64 T);

/// Exact IP for the weighted-completion-time objective (no threshold).
encoded_schedule encode_qswc(const uniform_instance& inst);

/// Reads machine/type counts out of an IP point, re-derives the objective from
/// scratch and cross-checks the constraints the variant imposes.
schedule decode(const encoded_schedule& enc, std::span<const i64> x);

/// Binary search over T with encode_decision/encode_rcmax probes.
schedule solve_makespan(const uniform_instance& inst, sched_variant variant);
schedule solve_rcmax(const unrelated_instance& inst);

/// Single IP solve for the weighted-completion objective.
schedule solve_qswc(const uniform_instance& inst);

uniform_instance parse_uniform_json(const std::string& text);
unrelated_instance parse_unrelated_json(const std::string& text);
std::string schedule_to_json(const schedule& s);

} // namespace nfold
