#include "nfold/solver.hpp"

#include <algorithm>
#include <memory>
#include <unordered_map>

#include "nfold/errors.hpp"
#include "nfold/graver.hpp"
#include "nfold/partition.hpp"

namespace nfold {

namespace {

constexpr i64 brick_node_budget = 200'000'000;
constexpr i64 max_augment_iterations = 2'000'000;

// Per-coordinate gain of moving x_j to x_j + lambda*y_j, maximization sense.
i64 coordinate_gain(const objective& obj, std::size_t col, i64 xj, i64 lambda, i64 yj) {
    i64 step = checked_mul(lambda, yj);
    if (obj.kind == objective_kind::linear_max) return checked_mul(obj.c[col], step);
    i64 nx = checked_add(xj, step);
    i64 before = checked_add(checked_mul(obj.a[col], checked_mul(xj, xj)), checked_mul(obj.b[col], xj));
    i64 after = checked_add(checked_mul(obj.a[col], checked_mul(nx, nx)), checked_mul(obj.b[col], nx));
    return checked_sub(before, after);  // minimization negated
}

constexpr std::size_t dp_state_cap = 4'000'000;

struct path_node {
    i64 value;
    std::shared_ptr<const path_node> prev;
};

// Column processing plan for the sweep DP. Within a brick, each local row's
// support columns are grouped together (tight ranges first) so rows open and
// close quickly and the carried state stays small.
struct sweep_plan {
    struct column_info {
        std::size_t global = 0;      // original column index
        i64 lo = 0, hi = 0;          // y value range from the lambda-scaled box
        i64 maxmag = 0;
        std::vector<i64> top;        // r top-row coefficients
        std::vector<std::pair<std::size_t, i64>> locals;  // (local row id, coefficient)
    };
    std::vector<column_info> cols;
    std::size_t top_rows = 0;
    std::size_t total_cols = 0;
    std::vector<std::size_t> row_first, row_last;      // per local row id, position range
    std::vector<std::vector<std::size_t>> open_rows;   // per position: rows open on entry
    std::vector<std::vector<std::size_t>> close_rows;  // per position: rows closed after it
    std::vector<std::vector<i64>> top_move;            // per top row, suffix movement bound
    std::vector<std::vector<i64>> row_move;            // per local row, suffix movement bound
    i64 mag_total = 0;                                 // sum of per-column max magnitudes
};

sweep_plan build_plan(const nfold_instance& inst, std::span<const i64> x, i64 lambda, i64 g1) {
    sweep_plan plan;
    const std::size_t r = inst.top_rows();
    plan.top_rows = r;
    plan.total_cols = inst.total_cols();

    std::size_t col0 = 0;
    std::size_t row_id0 = 0;
    for (const auto& bk : inst.bricks) {
        const std::size_t t = bk.width();
        std::vector<i64> lo(t), hi(t);
        for (std::size_t j = 0; j < t; ++j) {
            i64 xj = x[col0 + j];
            lo[j] = std::max(ceil_div(checked_sub(bk.lower[j], xj), lambda), -g1);
            hi[j] = std::min(floor_div(checked_sub(bk.upper[j], xj), lambda), g1);
        }
        // Row-major grouping: append each local row's missing support columns,
        // narrow ranges first; untouched columns go last.
        std::vector<bool> placed(t, false);
        std::vector<std::size_t> order;
        for (std::size_t row = 0; row < bk.local_rows(); ++row) {
            std::vector<std::size_t> want;
            for (std::size_t j = 0; j < t; ++j)
                if (!placed[j] && bk.B.at(row, j) != 0) want.push_back(j);
            std::stable_sort(want.begin(), want.end(), [&](std::size_t a, std::size_t b) {
                return hi[a] - lo[a] < hi[b] - lo[b];
            });
            for (std::size_t j : want) {
                placed[j] = true;
                order.push_back(j);
            }
        }
        for (std::size_t j = 0; j < t; ++j)
            if (!placed[j]) order.push_back(j);

        for (std::size_t j : order) {
            sweep_plan::column_info ci;
            ci.global = col0 + j;
            ci.lo = lo[j];
            ci.hi = hi[j];
            ci.maxmag = std::max(ci.lo < 0 ? -ci.lo : ci.lo, ci.hi < 0 ? -ci.hi : ci.hi);
            ci.top.resize(r);
            for (std::size_t k = 0; k < r; ++k) ci.top[k] = bk.A.at(k, j);
            for (std::size_t row = 0; row < bk.local_rows(); ++row)
                if (bk.B.at(row, j) != 0) ci.locals.emplace_back(row_id0 + row, bk.B.at(row, j));
            plan.mag_total = sat_add(plan.mag_total, ci.maxmag);
            plan.cols.push_back(std::move(ci));
        }
        row_id0 += bk.local_rows();
        col0 += t;
    }

    const std::size_t positions = plan.cols.size();
    const std::size_t local_rows = row_id0;
    plan.row_first.assign(local_rows, positions);
    plan.row_last.assign(local_rows, positions);
    for (std::size_t p = 0; p < positions; ++p)
        for (auto [row, coef] : plan.cols[p].locals) {
            if (plan.row_first[row] == positions) plan.row_first[row] = p;
            plan.row_last[row] = p;
        }
    plan.open_rows.assign(positions + 1, {});
    plan.close_rows.assign(positions, {});
    for (std::size_t row = 0; row < local_rows; ++row) {
        if (plan.row_first[row] == positions) continue;  // all-zero local row
        for (std::size_t p = plan.row_first[row] + 1; p <= plan.row_last[row]; ++p)
            plan.open_rows[p].push_back(row);
        plan.close_rows[plan.row_last[row]].push_back(row);
    }
    for (auto& rows : plan.open_rows) std::sort(rows.begin(), rows.end());

    plan.top_move.assign(r, std::vector<i64>(positions + 1, 0));
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t p = positions; p-- > 0;) {
            i64 a = plan.cols[p].top[k];
            plan.top_move[k][p] = sat_add(plan.top_move[k][p + 1],
                                          sat_mul(a < 0 ? -a : a, plan.cols[p].maxmag));
        }
    plan.row_move.assign(local_rows, std::vector<i64>(positions + 1, 0));
    for (std::size_t row = 0; row < local_rows; ++row)
        for (std::size_t p = positions; p-- > 0;) {
            i64 contrib = 0;
            for (auto [rw, coef] : plan.cols[p].locals)
                if (rw == row) contrib = sat_mul(coef < 0 ? -coef : coef, plan.cols[p].maxmag);
            plan.row_move[row][p] = sat_add(plan.row_move[row][p + 1], contrib);
        }
    return plan;
}

struct sweep_state {
    i64 gain = 0;
    std::shared_ptr<const path_node> path;
};

struct key_hash {
    std::size_t operator()(const std::vector<i64>& k) const {
        std::size_t h = 1469598103934665603ull;
        for (i64 v : k) {
            h ^= static_cast<std::size_t>(v);
            h *= 1099511628211ull;
        }
        return h;
    }
};

std::vector<i64> path_values(const sweep_plan& plan, const std::shared_ptr<const path_node>& tail) {
    std::vector<i64> by_position;
    for (const path_node* n = tail.get(); n; n = n->prev.get()) by_position.push_back(n->value);
    std::reverse(by_position.begin(), by_position.end());
    std::vector<i64> y(plan.total_cols, 0);
    for (std::size_t p = 0; p < by_position.size(); ++p) y[plan.cols[p].global] = by_position[p];
    return y;
}

} // namespace

i64 solver_norm_cap(const nfold_instance& inst) {
    nfold_params params = nfold_partition_params(inst);
    i64 delta = inst.delta();
    // Exact Graver norm of an empty local block is 1 (unit vectors), which is
    // tighter than the generic formula's L_B; still a valid cap for the
    // assembled matrix.
    bool any_local = false;
    for (const auto& bk : inst.bricks) any_local = any_local || bk.local_rows() > 0;
    i64 lb = any_local ? lemma2_bound(static_cast<i64>(params.p_B), delta) : 1;
    i64 base = sat_add(sat_mul(2, sat_mul(static_cast<i64>(params.p_A), sat_mul(delta, lb))), 1);
    i64 lemma_cap = sat_mul(static_cast<i64>(params.S_A),
                            sat_mul(lb, sat_pow(base, static_cast<i64>(params.p_A))));
    i64 box_cap = 0;
    for (const auto& bk : inst.bricks)
        box_cap = sat_add(box_cap, sat_mul(static_cast<i64>(bk.width()), inst.box_width()));
    return std::max<i64>(1, std::min(lemma_cap, box_cap));
}

std::optional<step_result> best_step(const nfold_instance& inst, std::span<const i64> x,
                                     i64 lambda, i64 g1) {
    if (lambda < 1) throw invalid_input("best_step needs lambda >= 1");
    if (g1 < 1) throw invalid_input("best_step needs g1 >= 1");
    if (g1 == huge) throw budget_exceeded("step norm cap saturated");

    // A zero objective admits no improving step.
    bool all_zero = true;
    if (inst.obj.kind == objective_kind::linear_max) {
        for (i64 c : inst.obj.c) all_zero = all_zero && c == 0;
    } else {
        for (std::size_t j = 0; j < inst.obj.a.size(); ++j)
            all_zero = all_zero && inst.obj.a[j] == 0 && inst.obj.b[j] == 0;
    }
    if (all_zero) return std::nullopt;

    sweep_plan plan = build_plan(inst, x, lambda, g1);
    const std::size_t r = plan.top_rows;
    const bool track_used = plan.mag_total > g1;

    // Key: top-row sums, then the used l1 budget when it can bind, then the
    // partial sums of the local rows open at this position.
    using state_map = std::unordered_map<std::vector<i64>, sweep_state, key_hash>;
    state_map states;
    {
        std::vector<i64> key(r + (track_used ? 1 : 0), 0);
        states.emplace(std::move(key), sweep_state{});
    }

    for (std::size_t p = 0; p < plan.cols.size(); ++p) {
        const auto& ci = plan.cols[p];
        const auto& open_in = plan.open_rows[p];
        const auto& open_out = plan.open_rows[p + 1];
        state_map next;
        next.reserve(states.size() * 2);

        for (const auto& [key, state] : states) {
            std::span<const i64> sigma(key.data(), r);
            i64 used = track_used ? key[r] : 0;
            const i64* open_sums = key.data() + r + (track_used ? 1 : 0);

            // Feasible value interval for this column.
            i64 lo = ci.lo, hi = ci.hi;
            if (track_used) {
                lo = std::max(lo, -(g1 - used));
                hi = std::min(hi, g1 - used);
            }
            for (std::size_t k = 0; k < r && lo <= hi; ++k) {
                i64 a = ci.top[k];
                if (a == 0) continue;
                // |sigma_k + a*v| <= top_move[k][p+1]
                i64 move = plan.top_move[k][p + 1];
                i64 lo_k, hi_k;
                if (move == huge) continue;
                if (a > 0) {
                    lo_k = ceil_div(checked_sub(checked_neg(move), sigma[k]), a);
                    hi_k = floor_div(checked_sub(move, sigma[k]), a);
                } else {
                    lo_k = ceil_div(checked_sub(move, sigma[k]), a);
                    hi_k = floor_div(checked_sub(checked_neg(move), sigma[k]), a);
                }
                lo = std::max(lo, lo_k);
                hi = std::min(hi, hi_k);
            }
            for (auto [row, coef] : ci.locals) {
                if (lo > hi) break;
                i64 sum = 0;
                auto it = std::lower_bound(open_in.begin(), open_in.end(), row);
                if (it != open_in.end() && *it == row)
                    sum = open_sums[it - open_in.begin()];
                i64 move = plan.row_move[row][p + 1];
                if (move == huge) continue;
                i64 lo_k, hi_k;
                if (coef > 0) {
                    lo_k = ceil_div(checked_sub(checked_neg(move), sum), coef);
                    hi_k = floor_div(checked_sub(move, sum), coef);
                } else {
                    lo_k = ceil_div(checked_sub(move, sum), coef);
                    hi_k = floor_div(checked_sub(checked_neg(move), sum), coef);
                }
                lo = std::max(lo, lo_k);
                hi = std::min(hi, hi_k);
            }

            for (i64 v = lo; v <= hi; ++v) {
                // Advance top sums and open-row sums; close rows that end here.
                std::vector<i64> nkey;
                nkey.reserve(r + (track_used ? 1 : 0) + open_out.size());
                bool dead = false;
                for (std::size_t k = 0; k < r; ++k) {
                    i64 s = checked_add(sigma[k], checked_mul(ci.top[k], v));
                    i64 a = s < 0 ? -s : s;
                    if (a > plan.top_move[k][p + 1]) {
                        dead = true;
                        break;
                    }
                    nkey.push_back(s);
                }
                if (dead) continue;
                i64 vmag = v < 0 ? -v : v;
                if (track_used) nkey.push_back(used + vmag);

                auto row_sum_now = [&](std::size_t row) {
                    i64 sum = 0;
                    auto it = std::lower_bound(open_in.begin(), open_in.end(), row);
                    if (it != open_in.end() && *it == row) sum = open_sums[it - open_in.begin()];
                    for (auto [rw, coef] : ci.locals)
                        if (rw == row) sum = checked_add(sum, checked_mul(coef, v));
                    return sum;
                };
                for (std::size_t row : plan.close_rows[p]) {
                    if (row_sum_now(row) != 0) {
                        dead = true;
                        break;
                    }
                }
                if (dead) continue;
                for (std::size_t row : open_out) {
                    i64 sum = row_sum_now(row);
                    i64 a = sum < 0 ? -sum : sum;
                    if (a > plan.row_move[row][p + 1]) {
                        dead = true;
                        break;
                    }
                    nkey.push_back(sum);
                }
                if (dead) continue;

                sweep_state nstate;
                nstate.gain = checked_add(
                    state.gain, v == 0 ? 0
                                       : coordinate_gain(inst.obj, ci.global, x[ci.global],
                                                         lambda, v));
                nstate.path = std::make_shared<const path_node>(path_node{v, state.path});
                auto it = next.find(nkey);
                if (it == next.end()) {
                    next.emplace(std::move(nkey), std::move(nstate));
                } else if (nstate.gain > it->second.gain ||
                           (nstate.gain == it->second.gain &&
                            path_values(plan, nstate.path) < path_values(plan, it->second.path))) {
                    it->second = std::move(nstate);
                }
            }
        }
        states = std::move(next);
        if (states.size() > dp_state_cap)
            throw budget_exceeded("step search state space too large");
        if (states.empty()) break;
    }

    std::optional<sweep_state> best;
    std::vector<i64> best_y;
    for (const auto& [key, state] : states) {
        bool zero = true;
        for (std::size_t k = 0; k < r; ++k) zero = zero && key[k] == 0;
        if (!zero) continue;
        auto y = path_values(plan, state.path);
        if (!best || state.gain > best->gain || (state.gain == best->gain && y < best_y)) {
            best = state;
            best_y = std::move(y);
        }
    }
    if (!best || best->gain <= 0) return std::nullopt;
    return step_result{std::move(best_y), best->gain};
}

namespace {

// The auxiliary feasibility instance: every brick gains one signed slack
// column per local row, the first brick gains one per top row. Slacks start
// at |residual| and are driven to zero by a linear objective.
struct aux_model {
    nfold_instance inst;
    std::vector<i64> start;
    std::vector<std::size_t> original_cols;  // positions of the original columns in aux x
};

aux_model build_aux(const nfold_instance& inst, const std::vector<i64>& x_start,
                    const std::vector<i64>& top_residual,
                    const std::vector<std::vector<i64>>& local_residual) {
    const std::size_t r = inst.top_rows();
    aux_model aux;
    aux.inst.b_top = inst.b_top;
    aux.inst.obj.kind = objective_kind::linear_max;
    std::size_t orig_col = 0;
    std::size_t aux_col = 0;
    for (std::size_t i = 0; i < inst.bricks.size(); ++i) {
        const brick& bk = inst.bricks[i];
        const std::size_t s = bk.local_rows();
        const std::size_t extra = s + (i == 0 ? r : 0);
        brick nb;
        nb.A = int_matrix(r, bk.width() + extra);
        nb.B = int_matrix(s, bk.width() + extra);
        for (std::size_t row = 0; row < r; ++row)
            for (std::size_t j = 0; j < bk.width(); ++j) nb.A.at(row, j) = bk.A.at(row, j);
        for (std::size_t row = 0; row < s; ++row)
            for (std::size_t j = 0; j < bk.width(); ++j) nb.B.at(row, j) = bk.B.at(row, j);
        nb.b_local = bk.b_local;
        nb.lower = bk.lower;
        nb.upper = bk.upper;
        for (std::size_t j = 0; j < bk.width(); ++j) {
            aux.inst.obj.c.push_back(0);
            aux.original_cols.push_back(aux_col + j);
            aux.start.push_back(x_start[orig_col + j]);
        }
        // Local slack columns: one signed unit per local row.
        for (std::size_t row = 0; row < s; ++row) {
            i64 res = local_residual[i][row];
            std::size_t col = bk.width() + row;
            nb.B.at(row, col) = res < 0 ? -1 : 1;
            nb.lower.push_back(0);
            nb.upper.push_back(res < 0 ? checked_neg(res) : res);
            aux.inst.obj.c.push_back(-1);
            aux.start.push_back(res < 0 ? checked_neg(res) : res);
        }
        // Top slack columns live in the first brick only.
        if (i == 0) {
            for (std::size_t row = 0; row < r; ++row) {
                i64 res = top_residual[row];
                std::size_t col = bk.width() + s + row;
                nb.A.at(row, col) = res < 0 ? -1 : 1;
                nb.lower.push_back(0);
                nb.upper.push_back(res < 0 ? checked_neg(res) : res);
                aux.inst.obj.c.push_back(-1);
                aux.start.push_back(res < 0 ? checked_neg(res) : res);
            }
        }
        aux.inst.bricks.push_back(std::move(nb));
        orig_col += bk.width();
        aux_col += bk.width() + extra;
    }
    aux.inst.validate();
    return aux;
}

} // namespace

namespace {

std::optional<std::vector<i64>> initial_feasible_impl(const nfold_instance& inst, i64* aux_iterations);

} // namespace

std::optional<std::vector<i64>> initial_feasible(const nfold_instance& inst) {
    return initial_feasible_impl(inst, nullptr);
}

namespace {

std::optional<std::vector<i64>> initial_feasible_impl(const nfold_instance& inst, i64* aux_iterations) {
    inst.validate();
    const std::size_t r = inst.top_rows();
    std::vector<i64> x_start(inst.total_cols());
    std::size_t col0 = 0;
    for (const auto& bk : inst.bricks) {
        for (std::size_t j = 0; j < bk.width(); ++j)
            x_start[col0 + j] = std::clamp<i64>(0, bk.lower[j], bk.upper[j]);
        col0 += bk.width();
    }
    std::vector<i64> top_residual = inst.b_top;
    std::vector<std::vector<i64>> local_residual;
    col0 = 0;
    bool clean = true;
    for (const auto& bk : inst.bricks) {
        std::span<const i64> xi(x_start.data() + col0, bk.width());
        auto contrib = bk.A.mul(xi);
        for (std::size_t k = 0; k < r; ++k) top_residual[k] = checked_sub(top_residual[k], contrib[k]);
        auto local = bk.B.mul(xi);
        std::vector<i64> res(bk.local_rows());
        for (std::size_t k = 0; k < bk.local_rows(); ++k) {
            res[k] = checked_sub(bk.b_local[k], local[k]);
            clean = clean && res[k] == 0;
        }
        local_residual.push_back(std::move(res));
        col0 += bk.width();
    }
    for (i64 v : top_residual) clean = clean && v == 0;
    if (clean) return x_start;

    aux_model aux = build_aux(inst, x_start, top_residual, local_residual);
    if (!check_feasible(aux.inst, aux.start))
        throw internal_error("auxiliary start point is not feasible");
    solution aux_sol = augment_to_optimal(aux.inst, aux.start);
    if (aux_iterations) *aux_iterations = aux_sol.iterations;
    if (aux_sol.objective_value != 0) return std::nullopt;  // some slack stuck above zero
    std::vector<i64> x0;
    x0.reserve(inst.total_cols());
    for (std::size_t pos : aux.original_cols) x0.push_back(aux_sol.x[pos]);
    return x0;
}

} // namespace

solution augment_to_optimal(const nfold_instance& inst, std::vector<i64> x0,
                            const std::function<void(const step_result&, i64)>* step_log) {
    inst.validate();
    if (!check_feasible(inst, x0)) throw invalid_input("augment_to_optimal needs a feasible start");
    const i64 g1 = solver_norm_cap(inst);
    if (g1 == huge) throw budget_exceeded("norm cap saturated; instance intractable at this size");

    i64 width = inst.box_width();
    std::vector<i64> lambdas{1};
    while (lambdas.back() < std::max<i64>(width, 1)) lambdas.push_back(checked_mul(lambdas.back(), 2));

    solution sol;
    sol.x = std::move(x0);
    sol.iterations = 0;
    i64 current = objective_max_sense(inst, sol.x);
    const int_matrix full = assemble(inst);
    for (;;) {
        if (sol.iterations > max_augment_iterations)
            throw budget_exceeded("augmentation iteration budget exceeded");
        std::optional<step_result> best;
        i64 best_lambda = 0;
        for (i64 lambda : lambdas) {
            auto step = best_step(inst, sol.x, lambda, g1);
            if (step && (!best || step->gain > best->gain)) {
                best = std::move(step);
                best_lambda = lambda;
            }
        }
        if (!best) break;

        // Accepted-step checks: cycle of the full matrix, within the cap,
        // feasible after the move, strictly improving.
        if (!is_zero(full.mul(best->direction)))
            throw internal_error("accepted step is not a cycle of the assembled matrix");
        if (l1_norm(best->direction) > g1) throw internal_error("accepted step exceeds the norm cap");
        for (std::size_t j = 0; j < sol.x.size(); ++j)
            sol.x[j] = checked_add(sol.x[j], checked_mul(best_lambda, best->direction[j]));
        if (!check_feasible(inst, sol.x)) throw internal_error("accepted step left the feasible region");
        i64 now = objective_max_sense(inst, sol.x);
        if (now <= current) throw internal_error("accepted step did not improve the objective");
        if (checked_sub(now, current) != best->gain) throw internal_error("step gain mismatch");
        current = now;
        ++sol.iterations;
        if (step_log) (*step_log)(*best, best_lambda);
    }
    sol.status = solve_status::optimal;
    sol.objective_value = evaluate_objective(inst, sol.x);
    return sol;
}

solution solve(const nfold_instance& inst) {
    inst.validate();
    i64 aux_iterations = 0;
    auto x0 = initial_feasible_impl(inst, &aux_iterations);
    if (!x0) {
        solution sol;
        sol.status = solve_status::infeasible;
        sol.iterations = aux_iterations;
        return sol;
    }
    solution sol = augment_to_optimal(inst, std::move(*x0));
    sol.iterations = checked_add(sol.iterations, aux_iterations);
    return sol;
}

} // namespace nfold
