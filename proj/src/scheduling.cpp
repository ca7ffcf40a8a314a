#include "nfold/scheduling.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "nfold/errors.hpp"
#include "nfold/solver.hpp"

namespace nfold {

i64 uniform_instance::total_jobs() const {
    i64 n = 0;
    for (const auto& t : types) n = checked_add(n, t.count);
    return n;
}

i64 uniform_instance::total_work() const {
    i64 w = 0;
    for (const auto& t : types) w = checked_add(w, checked_mul(t.processing, t.count));
    return w;
}

i64 uniform_instance::p_max() const {
    i64 p = 0;
    for (const auto& t : types) p = std::max(p, t.processing);
    return p;
}

void uniform_instance::validate() const {
    if (speeds.empty()) throw invalid_input("scheduling instance needs at least one machine");
    if (types.empty()) throw invalid_input("scheduling instance needs at least one job type");
    for (i64 s : speeds)
        if (s < 1) throw invalid_input("machine speeds must be positive");
    for (const auto& t : types) {
        if (t.processing < 1) throw invalid_input("processing times must be positive");
        if (t.count < 0) throw invalid_input("job multiplicities must be nonnegative");
        if (t.weight && *t.weight < 0) throw invalid_input("weights must be nonnegative");
        if (t.release && *t.release < 0) throw invalid_input("release times must be nonnegative");
        if (t.deadline && *t.deadline < 0) throw invalid_input("deadlines must be nonnegative");
    }
    if (!capacities.empty() && capacities.size() != speeds.size())
        throw invalid_input("capacities must list one entry per machine");
    for (i64 c : capacities)
        if (c < 0) throw invalid_input("capacities must be nonnegative");
}

void unrelated_instance::validate() const {
    if (machine_kinds.empty()) throw invalid_input("unrelated instance needs at least one machine");
    if (ptimes.empty()) throw invalid_input("unrelated instance needs at least one kind");
    if (counts.empty()) throw invalid_input("unrelated instance needs at least one job type");
    for (std::size_t k : machine_kinds)
        if (k >= ptimes.size()) throw invalid_input("machine kind index out of range");
    for (const auto& row : ptimes) {
        if (row.size() != counts.size())
            throw invalid_input("each kind needs one processing time slot per job type");
        for (const auto& p : row)
            if (p && *p < 1) throw invalid_input("finite processing times must be positive");
    }
    for (i64 n : counts)
        if (n < 0) throw invalid_input("job multiplicities must be nonnegative");
}

sched_variant parse_variant(const std::string& name) {
    if (name == "cmax") return sched_variant::cmax;
    if (name == "cmin") return sched_variant::cmin;
    if (name == "cmax-cap") return sched_variant::cmax_capacity;
    if (name == "cmax-release") return sched_variant::cmax_release;
    if (name == "cmax-deadline") return sched_variant::cmax_deadline;
    if (name == "rcmax") return sched_variant::rcmax;
    if (name == "qswc") return sched_variant::qswc;
    throw invalid_input("unknown scheduling variant: " + name);
}

std::string variant_name(sched_variant v) {
    switch (v) {
        case sched_variant::cmax: return "cmax";
        case sched_variant::cmin: return "cmin";
        case sched_variant::cmax_capacity: return "cmax-cap";
        case sched_variant::cmax_release: return "cmax-release";
        case sched_variant::cmax_deadline: return "cmax-deadline";
        case sched_variant::rcmax: return "rcmax";
        case sched_variant::qswc: return "qswc";
    }
    throw internal_error("unhandled variant");
}

namespace {

void require_family(const uniform_instance& inst, sched_variant v) {
    auto none_of_type = [&](auto member) {
        for (const auto& t : inst.types)
            if (t.*member) return false;
        return true;
    };
    auto all_of_type = [&](auto member) {
        for (const auto& t : inst.types)
            if (!(t.*member)) return false;
        return true;
    };
    bool want_release = v == sched_variant::cmax_release;
    bool want_deadline = v == sched_variant::cmax_deadline;
    bool want_weights = v == sched_variant::qswc;
    bool want_caps = v == sched_variant::cmax_capacity;
    if (want_release && !all_of_type(&job_type::release))
        throw invalid_input("release variant needs a release time on every type");
    if (!want_release && !none_of_type(&job_type::release))
        throw invalid_input("release times given but the variant does not use them");
    if (want_deadline && !all_of_type(&job_type::deadline))
        throw invalid_input("deadline variant needs a deadline on every type");
    if (!want_deadline && !none_of_type(&job_type::deadline))
        throw invalid_input("deadlines given but the variant does not use them");
    if (want_weights && !all_of_type(&job_type::weight))
        throw invalid_input("qswc needs a weight on every type");
    if (!want_weights && !none_of_type(&job_type::weight))
        throw invalid_input("weights given but the variant does not use them");
    if (want_caps && inst.capacities.empty())
        throw invalid_input("capacity variant needs per-machine capacities");
    if (!want_caps && !inst.capacities.empty())
        throw invalid_input("capacities given but the variant does not use them");
}

std::vector<std::size_t> sorted_type_order(const uniform_instance& inst, sched_variant v) {
    std::vector<std::size_t> order(inst.types.size());
    std::iota(order.begin(), order.end(), 0);
    if (v == sched_variant::cmax_release) {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return *inst.types[a].release < *inst.types[b].release;
        });
    } else if (v == sched_variant::cmax_deadline) {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return *inst.types[a].deadline < *inst.types[b].deadline;
        });
    }
    return order;
}

// Non-increasing w/p by exact cross multiplication; ties keep the smaller index.
std::vector<std::size_t> smith_order(const uniform_instance& inst) {
    std::vector<std::size_t> order(inst.types.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return checked_mul(*inst.types[a].weight, inst.types[b].processing) >
               checked_mul(*inst.types[b].weight, inst.types[a].processing);
    });
    return order;
}

} // namespace

encoded_schedule encode_decision(const uniform_instance& inst, sched_variant variant, i64 T) {
    inst.validate();
    if (T < 0) throw invalid_input("decision threshold must be nonnegative");
    if (variant == sched_variant::rcmax || variant == sched_variant::qswc)
        throw invalid_input("encode_decision handles the uniform makespan variants only");
    require_family(inst, variant);

    const std::size_t d = inst.types.size();
    const std::size_t m = inst.machines();
    encoded_schedule enc;
    enc.variant = variant;
    enc.horizon = T;
    enc.machine_count = m;
    enc.type_count = d;
    enc.type_order = sorted_type_order(inst, variant);
    enc.x_offset = 0;
    enc.s_offset = d;

    i64 r_max = 0;
    for (const auto& t : inst.types)
        if (t.release) r_max = std::max(r_max, *t.release);

    enc.ip.b_top.assign(d, 0);
    for (std::size_t j = 0; j < d; ++j) enc.ip.b_top[j] = inst.types[j].count;

    for (std::size_t i = 0; i < m; ++i) {
        const i64 budget = checked_mul(inst.speeds[i], T);
        brick bk;
        std::size_t t_cols;
        if (variant == sched_variant::cmax || variant == sched_variant::cmin) {
            t_cols = d + 1;
            bk.B = int_matrix(1, t_cols);
            for (std::size_t j = 0; j < d; ++j) bk.B.at(0, j) = inst.types[j].processing;
            bk.B.at(0, d) = variant == sched_variant::cmax ? 1 : -1;
            bk.b_local = {budget};
        } else if (variant == sched_variant::cmax_capacity) {
            t_cols = d + 2;
            bk.B = int_matrix(2, t_cols);
            for (std::size_t j = 0; j < d; ++j) {
                bk.B.at(0, j) = inst.types[j].processing;
                bk.B.at(1, j) = 1;
            }
            bk.B.at(0, d) = 1;
            bk.B.at(1, d + 1) = 1;
            bk.b_local = {budget, inst.capacities[i]};
        } else {
            // x columns, start columns, ordering surpluses (j >= 2), makespan
            // slack, and for deadlines one slack per type.
            const std::size_t sur_cols = d - 1;
            const bool dl = variant == sched_variant::cmax_deadline;
            t_cols = 2 * d + sur_cols + 1 + (dl ? d : 0);
            const std::size_t rows = sur_cols + 1 + (dl ? d : 0);
            bk.B = int_matrix(rows, t_cols);
            bk.b_local.assign(rows, 0);
            const std::size_t sur0 = 2 * d;
            const std::size_t mk_col = 2 * d + sur_cols;
            const std::size_t dsl0 = mk_col + 1;
            for (std::size_t j = 1; j < d; ++j) {
                // s_j - s_{j-1} - p_{j-1} x_{j-1} - sur_j = 0
                std::size_t row = j - 1;
                bk.B.at(row, d + j) = 1;
                bk.B.at(row, d + j - 1) = -1;
                bk.B.at(row, j - 1) = -inst.types[enc.type_order[j - 1]].processing;
                bk.B.at(row, sur0 + j - 1) = -1;
            }
            // s_d + p_d x_d + slack = s_i T
            bk.B.at(sur_cols, 2 * d - 1) = 1;
            bk.B.at(sur_cols, d - 1) = inst.types[enc.type_order[d - 1]].processing;
            bk.B.at(sur_cols, mk_col) = 1;
            bk.b_local[sur_cols] = budget;
            if (dl) {
                for (std::size_t j = 0; j < d; ++j) {
                    std::size_t row = sur_cols + 1 + j;
                    bk.B.at(row, d + j) = 1;
                    bk.B.at(row, j) = inst.types[enc.type_order[j]].processing;
                    bk.B.at(row, dsl0 + j) = 1;
                    bk.b_local[row] = *inst.types[enc.type_order[j]].deadline;
                }
            }
        }

        bk.A = int_matrix(d, t_cols);
        for (std::size_t j = 0; j < d; ++j) bk.A.at(enc.type_order[j], j) = 1;

        bk.lower.assign(t_cols, 0);
        bk.upper.assign(t_cols, 0);
        for (std::size_t j = 0; j < d; ++j) bk.upper[j] = inst.types[enc.type_order[j]].count;
        if (variant == sched_variant::cmax) {
            bk.upper[d] = budget;
        } else if (variant == sched_variant::cmin) {
            bk.upper[d] = inst.total_work();
        } else if (variant == sched_variant::cmax_capacity) {
            bk.upper[d] = budget;
            bk.upper[d + 1] = inst.capacities[i];
        } else {
            const i64 t_box = std::max(budget, r_max);
            const std::size_t sur_cols = d - 1;
            const std::size_t mk_col = 2 * d + sur_cols;
            for (std::size_t j = 0; j < d; ++j) {
                const job_type& ty = inst.types[enc.type_order[j]];
                bk.lower[d + j] = variant == sched_variant::cmax_release ? *ty.release : 0;
                bk.upper[d + j] = t_box;
            }
            for (std::size_t j = 0; j < sur_cols; ++j) bk.upper[2 * d + j] = t_box;
            bk.upper[mk_col] = budget;
            if (variant == sched_variant::cmax_deadline)
                for (std::size_t j = 0; j < d; ++j)
                    bk.upper[mk_col + 1 + j] = *inst.types[enc.type_order[j]].deadline;
        }
        enc.ip.bricks.push_back(std::move(bk));
    }
    enc.ip.obj.kind = objective_kind::linear_max;
    enc.ip.obj.c.assign(enc.ip.total_cols(), 0);
    enc.ip.validate();
    return enc;
}

encoded_schedule encode_rcmax(const unrelated_instance& inst, i64 T) {
    inst.validate();
    if (T < 0) throw invalid_input("decision threshold must be nonnegative");
    const std::size_t d = inst.type_count();
    const std::size_t m = inst.machines();
    encoded_schedule enc;
    enc.variant = sched_variant::rcmax;
    enc.horizon = T;
    enc.machine_count = m;
    enc.type_count = d;
    enc.type_order.resize(d);
    std::iota(enc.type_order.begin(), enc.type_order.end(), 0);
    enc.ip.b_top = inst.counts;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& p_row = inst.ptimes[inst.machine_kinds[i]];
        brick bk;
        bk.A = int_matrix(d, d + 1);
        for (std::size_t j = 0; j < d; ++j) bk.A.at(j, j) = 1;
        bk.B = int_matrix(2, d + 1);
        for (std::size_t j = 0; j < d; ++j) {
            bk.B.at(0, j) = p_row[j] ? *p_row[j] : 0;
            bk.B.at(1, j) = p_row[j] ? 0 : 1;
        }
        bk.B.at(0, d) = 1;
        bk.b_local = {T, 0};
        bk.lower.assign(d + 1, 0);
        bk.upper.assign(d + 1, 0);
        for (std::size_t j = 0; j < d; ++j) bk.upper[j] = inst.counts[j];
        bk.upper[d] = T;
        enc.ip.bricks.push_back(std::move(bk));
    }
    enc.ip.obj.kind = objective_kind::linear_max;
    enc.ip.obj.c.assign(enc.ip.total_cols(), 0);
    enc.ip.validate();
    return enc;
}

encoded_schedule encode_qswc(const uniform_instance& inst) {
    inst.validate();
    require_family(inst, sched_variant::qswc);
    const std::size_t d = inst.types.size();
    const std::size_t m = inst.machines();
    encoded_schedule enc;
    enc.variant = sched_variant::qswc;
    enc.machine_count = m;
    enc.type_count = d;
    enc.type_order = smith_order(inst);
    enc.x_offset = 0;
    enc.s_offset = d;

    // Integral coefficients: scale the objective by 2 * prod(p_j) * prod(s_i);
    // machine i keeps the integer factor prod(p_j) * prod(s_{i'})/s_i.
    i64 p_prod = 1;
    for (const auto& t : inst.types) p_prod = checked_mul(p_prod, t.processing);
    i64 s_prod = 1;
    for (i64 s : inst.speeds) s_prod = checked_mul(s_prod, s);
    enc.objective_scale = rational(checked_mul(2, checked_mul(p_prod, s_prod)), 1);

    const i64 work = inst.total_work();
    enc.ip.b_top.assign(d, 0);
    for (std::size_t j = 0; j < d; ++j) enc.ip.b_top[j] = inst.types[j].count;
    enc.ip.obj.kind = objective_kind::sep_convex_min;

    for (std::size_t i = 0; i < m; ++i) {
        brick bk;
        bk.A = int_matrix(d, 2 * d);
        bk.B = int_matrix(d, 2 * d);
        bk.b_local.assign(d, 0);
        bk.lower.assign(2 * d, 0);
        bk.upper.assign(2 * d, 0);
        for (std::size_t j = 0; j < d; ++j) {
            const job_type& ty = inst.types[enc.type_order[j]];
            bk.A.at(enc.type_order[j], j) = 1;
            bk.upper[j] = ty.count;
            bk.upper[d + j] = work;
            // z_j - z_{j-1} - p_j x_j = 0
            bk.B.at(j, d + j) = 1;
            if (j > 0) bk.B.at(j, d + j - 1) = -1;
            bk.B.at(j, j) = -ty.processing;
        }
        enc.ip.bricks.push_back(std::move(bk));
    }
    // Objective coefficients laid out brick by brick: x columns first, then z.
    for (std::size_t i = 0; i < m; ++i) {
        const i64 factor = checked_mul(p_prod, s_prod / inst.speeds[i]);
        std::vector<i64> ax(d, 0), bx(d, 0), az(d, 0), bz(d, 0);
        for (std::size_t j = 0; j < d; ++j) {
            const job_type& ty = inst.types[enc.type_order[j]];
            bx[j] = checked_mul(factor, checked_mul(ty.processing, *ty.weight));
            i64 term = checked_mul(factor / ty.processing, *ty.weight);
            i64 next_term = 0;
            if (j + 1 < d) {
                const job_type& nx = inst.types[enc.type_order[j + 1]];
                next_term = checked_mul(factor / nx.processing, *nx.weight);
            }
            az[j] = checked_sub(term, next_term);
            if (az[j] < 0) throw internal_error("smith order produced a negative quadratic term");
        }
        for (std::size_t j = 0; j < d; ++j) {
            enc.ip.obj.a.push_back(ax[j]);
            enc.ip.obj.b.push_back(bx[j]);
        }
        for (std::size_t j = 0; j < d; ++j) {
            enc.ip.obj.a.push_back(az[j]);
            enc.ip.obj.b.push_back(bz[j]);
        }
    }
    enc.ip.validate();
    return enc;
}

namespace {

// Completion of machine i's compact block schedule in machine-work units,
// including the virtual start floors of types with no jobs assigned.
i64 compact_completion(const uniform_instance& inst, const encoded_schedule& enc,
                       const std::vector<i64>& counts_sorted) {
    i64 clock = 0;
    for (std::size_t j = 0; j < enc.type_order.size(); ++j) {
        const job_type& ty = inst.types[enc.type_order[j]];
        i64 start = clock;
        if (enc.variant == sched_variant::cmax_release) start = std::max(start, *ty.release);
        clock = checked_add(start, checked_mul(ty.processing, counts_sorted[j]));
    }
    return clock;
}

} // namespace

schedule decode(const encoded_schedule& enc, std::span<const i64> x) {
    if (x.size() != enc.ip.total_cols()) throw invalid_input("decode point has the wrong length");
    schedule out;
    out.status = solve_status::optimal;
    const std::size_t d = enc.type_count;
    std::vector<i64> type_totals(d, 0);
    std::size_t col0 = 0;
    for (std::size_t i = 0; i < enc.machine_count; ++i) {
        const brick& bk = enc.ip.bricks[i];
        machine_schedule ms;
        ms.counts.assign(d, 0);
        bool timed = enc.variant == sched_variant::cmax_release ||
                     enc.variant == sched_variant::cmax_deadline;
        if (timed) ms.starts.assign(d, 0);
        for (std::size_t j = 0; j < d; ++j) {
            std::size_t orig = enc.type_order[j];
            ms.counts[orig] = x[col0 + enc.x_offset + j];
            type_totals[orig] = checked_add(type_totals[orig], ms.counts[orig]);
            if (timed) ms.starts[orig] = x[col0 + enc.s_offset + j];
        }
        out.machines.push_back(std::move(ms));
        col0 += bk.width();
    }
    for (std::size_t j = 0; j < d; ++j)
        if (type_totals[j] != enc.ip.b_top[j])
            throw internal_error("decoded counts do not cover every job");
    return out;
}

namespace {

schedule decode_uniform(const uniform_instance& inst, const encoded_schedule& enc,
                        std::span<const i64> x) {
    schedule out = decode(enc, x);
    const std::size_t d = enc.type_count;
    std::optional<i64> achieved;  // max over machines for cmax family, min for cmin
    for (std::size_t i = 0; i < enc.machine_count; ++i) {
        const auto& ms = out.machines[i];
        i64 load = 0;
        for (std::size_t j = 0; j < d; ++j)
            load = checked_add(load, checked_mul(inst.types[j].processing, ms.counts[j]));
        if (enc.variant == sched_variant::cmin) {
            i64 t_i = floor_div(load, inst.speeds[i]);
            achieved = achieved ? std::min(*achieved, t_i) : t_i;
        } else if (enc.variant == sched_variant::cmax ||
                   enc.variant == sched_variant::cmax_capacity) {
            i64 t_i = ceil_div(load, inst.speeds[i]);
            achieved = achieved ? std::max(*achieved, t_i) : t_i;
            if (enc.variant == sched_variant::cmax_capacity) {
                i64 njobs = std::accumulate(ms.counts.begin(), ms.counts.end(), i64{0});
                if (njobs > inst.capacities[i]) throw internal_error("capacity violated in decode");
            }
        } else {
            // Release/deadline: verify the raw start times against the block
            // model, then score the compact chain.
            std::vector<i64> counts_sorted(d), starts_sorted(d);
            for (std::size_t j = 0; j < d; ++j) {
                counts_sorted[j] = ms.counts[enc.type_order[j]];
                starts_sorted[j] = ms.starts[enc.type_order[j]];
            }
            i64 prev_end = 0;
            for (std::size_t j = 0; j < d; ++j) {
                const job_type& ty = inst.types[enc.type_order[j]];
                if (j > 0 && starts_sorted[j] < prev_end)
                    throw internal_error("start times violate the block order");
                if (enc.variant == sched_variant::cmax_release && starts_sorted[j] < *ty.release)
                    throw internal_error("start time before release");
                prev_end = checked_add(starts_sorted[j], checked_mul(ty.processing, counts_sorted[j]));
                if (enc.variant == sched_variant::cmax_deadline && prev_end > *ty.deadline)
                    throw internal_error("completion after deadline");
            }
            if (prev_end > checked_mul(inst.speeds[i], enc.horizon))
                throw internal_error("block schedule exceeds the probed horizon");
            i64 chain = compact_completion(inst, enc, counts_sorted);
            i64 t_i = ceil_div(chain, inst.speeds[i]);
            achieved = achieved ? std::max(*achieved, t_i) : t_i;
        }
    }
    out.objective = rational::whole(*achieved);
    return out;
}

schedule run_decision_search(const uniform_instance& inst, sched_variant variant, i64 lo, i64 hi,
                             bool maximize) {
    auto probe = [&](i64 T) -> std::optional<std::vector<i64>> {
        encoded_schedule enc = encode_decision(inst, variant, T);
        solution sol = solve(enc.ip);
        if (sol.status != solve_status::optimal) return std::nullopt;
        return sol.x;
    };
    schedule out;
    if (!maximize) {
        if (!probe(hi)) {
            out.status = solve_status::infeasible;
            return out;
        }
        while (lo < hi) {
            i64 mid = lo + (hi - lo) / 2;
            if (probe(mid))
                hi = mid;
            else
                lo = mid + 1;
        }
    } else {
        if (probe(hi)) {
            lo = hi;
        } else {
            while (lo < hi) {
                i64 mid = lo + (hi - lo + 1) / 2;
                if (probe(mid))
                    lo = mid;
                else
                    hi = mid - 1;
            }
        }
        hi = lo;
    }
    encoded_schedule enc = encode_decision(inst, variant, hi);
    solution sol = solve(enc.ip);
    if (sol.status != solve_status::optimal)
        throw internal_error("optimal threshold probe came back infeasible");
    return decode_uniform(inst, enc, sol.x);
}

} // namespace

schedule solve_makespan(const uniform_instance& inst, sched_variant variant) {
    inst.validate();
    const i64 work = inst.total_work();
    i64 speed_sum = 0;
    for (i64 s : inst.speeds) speed_sum = checked_add(speed_sum, s);
    switch (variant) {
        case sched_variant::cmax:
        case sched_variant::cmax_capacity:
        case sched_variant::cmax_deadline:
            return run_decision_search(inst, variant, ceil_div(work, speed_sum), work, false);
        case sched_variant::cmax_release: {
            i64 r_max = 0;
            for (const auto& t : inst.types) r_max = std::max(r_max, t.release.value_or(0));
            return run_decision_search(inst, variant, 0, checked_add(r_max, work), false);
        }
        case sched_variant::cmin: {
            i64 min_speed = *std::min_element(inst.speeds.begin(), inst.speeds.end());
            i64 hi = checked_add(floor_div(work, min_speed), inst.p_max());
            return run_decision_search(inst, variant, 0, hi, true);
        }
        default:
            throw invalid_input("solve_makespan handles the uniform variants only");
    }
}

schedule solve_rcmax(const unrelated_instance& inst) {
    inst.validate();
    i64 work = 0;
    for (std::size_t j = 0; j < inst.type_count(); ++j) {
        i64 p_best = 0;
        for (const auto& row : inst.ptimes)
            if (row[j]) p_best = std::max(p_best, *row[j]);
        work = checked_add(work, checked_mul(p_best, inst.counts[j]));
    }
    auto probe = [&](i64 T) -> std::optional<std::vector<i64>> {
        encoded_schedule enc = encode_rcmax(inst, T);
        solution sol = solve(enc.ip);
        if (sol.status != solve_status::optimal) return std::nullopt;
        return sol.x;
    };
    i64 lo = 0, hi = work;
    schedule out;
    if (!probe(hi)) {
        out.status = solve_status::infeasible;
        return out;
    }
    while (lo < hi) {
        i64 mid = lo + (hi - lo) / 2;
        if (probe(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    encoded_schedule enc = encode_rcmax(inst, hi);
    solution sol = solve(enc.ip);
    if (sol.status != solve_status::optimal)
        throw internal_error("optimal threshold probe came back infeasible");
    out = decode(enc, sol.x);
    i64 achieved = 0;
    for (std::size_t i = 0; i < enc.machine_count; ++i) {
        const auto& p_row = inst.ptimes[inst.machine_kinds[i]];
        i64 load = 0;
        for (std::size_t j = 0; j < inst.type_count(); ++j) {
            if (out.machines[i].counts[j] > 0 && !p_row[j])
                throw internal_error("job scheduled on an incompatible machine");
            if (p_row[j])
                load = checked_add(load, checked_mul(*p_row[j], out.machines[i].counts[j]));
        }
        achieved = std::max(achieved, load);
    }
    out.objective = rational::whole(achieved);
    return out;
}

schedule solve_qswc(const uniform_instance& inst) {
    inst.validate();
    encoded_schedule enc = encode_qswc(inst);
    solution sol = solve(enc.ip);
    if (sol.status != solve_status::optimal)
        throw internal_error("qswc encoding should always be feasible");
    schedule out = decode(enc, sol.x);
    // Re-derive the true value from the counts alone: jobs in Smith order,
    // completion times in wall-clock units.
    rational total = rational::whole(0);
    for (std::size_t i = 0; i < enc.machine_count; ++i) {
        i64 work_prefix = 0;
        for (std::size_t j = 0; j < enc.type_count; ++j) {
            const job_type& ty = inst.types[enc.type_order[j]];
            i64 cnt = out.machines[i].counts[enc.type_order[j]];
            if (cnt > 0) {
                // sum_{q=1..cnt} w * (prefix + q*p) / s_i
                i64 tri = checked_mul(ty.processing,
                                      checked_mul(cnt, checked_add(cnt, 1)) / 2);
                i64 num = checked_mul(*ty.weight, checked_add(checked_mul(work_prefix, cnt), tri));
                total = total.plus(rational(num, inst.speeds[i]));
            }
            work_prefix = checked_add(work_prefix, checked_mul(ty.processing, cnt));
        }
    }
    // Cross-check against the IP objective under the documented scaling.
    rational ip_value = rational(sol.objective_value, 1);
    rational scaled = rational(checked_mul(total.num, enc.objective_scale.num),
                               checked_mul(total.den, enc.objective_scale.den));
    if (scaled != ip_value) throw internal_error("qswc objective mismatch between IP and schedule");
    out.objective = total;
    return out;
}

namespace {

using nlohmann::json;

json parse_doc(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw invalid_input(std::string("scheduling JSON parse error: ") + e.what());
    }
}

} // namespace

uniform_instance parse_uniform_json(const std::string& text) {
    json doc = parse_doc(text);
    uniform_instance inst;
    if (!doc.contains("speeds") || !doc.contains("types"))
        throw invalid_input("scheduling JSON needs speeds and types");
    for (const auto& s : doc["speeds"]) inst.speeds.push_back(s.get<i64>());
    for (const auto& jt : doc["types"]) {
        job_type t;
        t.processing = jt.at("p").get<i64>();
        t.count = jt.at("n").get<i64>();
        if (jt.contains("w")) t.weight = jt["w"].get<i64>();
        if (jt.contains("r")) t.release = jt["r"].get<i64>();
        if (jt.contains("d")) t.deadline = jt["d"].get<i64>();
        inst.types.push_back(t);
    }
    if (doc.contains("capacities"))
        for (const auto& c : doc["capacities"]) inst.capacities.push_back(c.get<i64>());
    inst.validate();
    return inst;
}

unrelated_instance parse_unrelated_json(const std::string& text) {
    json doc = parse_doc(text);
    unrelated_instance inst;
    if (!doc.contains("kinds") || !doc.contains("types"))
        throw invalid_input("unrelated scheduling JSON needs kinds and types");
    const json& jk = doc["kinds"];
    for (const auto& k : jk.at("machine_kinds")) inst.machine_kinds.push_back(k.get<std::size_t>());
    for (const auto& row : jk.at("ptimes")) {
        std::vector<std::optional<i64>> r;
        for (const auto& p : row) {
            if (p.is_null())
                r.push_back(std::nullopt);
            else
                r.push_back(p.get<i64>());
        }
        inst.ptimes.push_back(std::move(r));
    }
    for (const auto& jt : doc["types"]) inst.counts.push_back(jt.at("n").get<i64>());
    inst.validate();
    return inst;
}

std::string schedule_to_json(const schedule& s) {
    nlohmann::ordered_json doc;
    doc["status"] = s.status == solve_status::optimal ? "optimal" : "infeasible";
    if (s.status == solve_status::optimal) {
        if (s.objective.is_integer())
            doc["objective"] = s.objective.num;
        else
            doc["objective"] = s.objective.str();
        doc["machines"] = nlohmann::ordered_json::array();
        for (const auto& ms : s.machines) {
            nlohmann::ordered_json jm;
            jm["counts"] = ms.counts;
            if (!ms.starts.empty()) jm["starts"] = ms.starts;
            doc["machines"].push_back(jm);
        }
    }
    return doc.dump();
}

} // namespace nfold
