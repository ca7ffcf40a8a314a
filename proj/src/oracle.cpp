#include "nfold/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "nfold/errors.hpp"

namespace nfold {

solution oracle_ip_solve(const nfold_instance& inst) {
    inst.validate();
    const std::size_t n = inst.total_cols();
    std::vector<i64> lo(n), hi(n);
    std::size_t col0 = 0;
    i64 volume = 1;
    for (const auto& bk : inst.bricks) {
        for (std::size_t j = 0; j < bk.width(); ++j) {
            lo[col0 + j] = bk.lower[j];
            hi[col0 + j] = bk.upper[j];
            volume = sat_mul(volume, sat_add(checked_sub(bk.upper[j], bk.lower[j]), 1));
        }
        col0 += bk.width();
    }
    if (volume > 10'000'000) throw budget_exceeded("oracle box volume exceeds 10^7 points");

    solution best;
    best.status = solve_status::infeasible;
    std::vector<i64> x = lo;
    bool more = true;
    i64 best_value = 0;
    while (more) {
        if (check_feasible(inst, x)) {
            i64 v = objective_max_sense(inst, x);
            if (best.status == solve_status::infeasible || v > best_value ||
                (v == best_value && x < best.x)) {
                best.status = solve_status::optimal;
                best_value = v;
                best.x = x;
                best.objective_value = evaluate_objective(inst, x);
            }
        }
        // odometer over the box
        more = false;
        for (std::size_t j = n; j-- > 0;) {
            if (x[j] < hi[j]) {
                ++x[j];
                for (std::size_t k = j + 1; k < n; ++k) x[k] = lo[k];
                more = true;
                break;
            }
        }
    }
    return best;
}

namespace {

// Independent finest-partition scan for the oracle radius.
std::size_t oracle_largest_part(const int_matrix& m) {
    const std::size_t rows = m.rows();
    std::vector<std::size_t> group(rows);
    std::iota(group.begin(), group.end(), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t a = 0; a < rows; ++a)
            for (std::size_t b = a + 1; b < rows; ++b) {
                if (group[a] == group[b]) continue;
                bool share = false;
                for (std::size_t c = 0; c < m.cols() && !share; ++c)
                    share = m.at(a, c) != 0 && m.at(b, c) != 0;
                if (share) {
                    std::size_t from = std::max(group[a], group[b]);
                    std::size_t to = std::min(group[a], group[b]);
                    for (auto& g : group)
                        if (g == from) g = to;
                    changed = true;
                }
            }
    }
    std::size_t largest = 0;
    for (std::size_t a = 0; a < rows; ++a) {
        std::size_t size = 0;
        for (std::size_t b = 0; b < rows; ++b)
            if (group[b] == group[a]) ++size;
        largest = std::max(largest, size);
    }
    return largest;
}

// Fraction-free row echelon form; rank and, for one-dimensional kernels, the
// primitive generator by back substitution.
struct oracle_echelon {
    std::vector<std::vector<i64>> a;
    std::vector<std::size_t> pivot_cols;
};

oracle_echelon oracle_eliminate(const int_matrix& m) {
    oracle_echelon e;
    e.a.assign(m.rows(), std::vector<i64>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) e.a[r][c] = m.at(r, c);
    auto reduce_gcd = [](std::vector<i64>& row) {
        i64 g = 0;
        for (i64 v : row) g = std::gcd(g, v < 0 ? -v : v);
        if (g > 1)
            for (i64& v : row) v /= g;
    };
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && e.a[p][col] == 0) ++p;
        if (p == m.rows()) continue;
        std::swap(e.a[row], e.a[p]);
        for (std::size_t r2 = row + 1; r2 < m.rows(); ++r2) {
            if (e.a[r2][col] == 0) continue;
            i64 g = std::gcd(e.a[row][col] < 0 ? -e.a[row][col] : e.a[row][col],
                             e.a[r2][col] < 0 ? -e.a[r2][col] : e.a[r2][col]);
            i64 f1 = e.a[row][col] / g, f2 = e.a[r2][col] / g;
            for (std::size_t c2 = 0; c2 < m.cols(); ++c2)
                e.a[r2][c2] = checked_sub(checked_mul(f1, e.a[r2][c2]),
                                          checked_mul(f2, e.a[row][c2]));
            reduce_gcd(e.a[r2]);
        }
        e.pivot_cols.push_back(col);
        ++row;
    }
    return e;
}

// Kernel dimension one pins the Graver basis to the primitive generator pair.
std::optional<std::vector<i64>> oracle_kernel_line(const oracle_echelon& e, std::size_t cols) {
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
    std::size_t free_col = cols;
    for (std::size_t c = 0; c < cols; ++c)
        if (!is_pivot[c]) {
            free_col = c;
            break;
        }
    std::vector<rational> x(cols, rational::whole(0));
    x[free_col] = rational::whole(1);
    for (std::size_t i = e.pivot_cols.size(); i-- > 0;) {
        std::size_t col = e.pivot_cols[i];
        rational s = rational::whole(0);
        for (std::size_t c = col + 1; c < cols; ++c) {
            if (e.a[i][c] == 0 || (x[c].num == 0)) continue;
            s = s.plus(rational(checked_mul(e.a[i][c], x[c].num), x[c].den));
        }
        x[col] = rational(checked_neg(s.num), checked_mul(s.den, e.a[i][col]));
    }
    i64 scale = 1;
    for (const auto& r : x) scale = checked_mul(scale / std::gcd(scale, r.den), r.den);
    std::vector<i64> v(cols);
    for (std::size_t c = 0; c < cols; ++c) v[c] = checked_mul(x[c].num, scale / x[c].den);
    i64 g = 0;
    for (i64 e2 : v) g = std::gcd(g, e2 < 0 ? -e2 : e2);
    if (g == 0) return std::nullopt;
    for (i64& e2 : v) e2 /= g;
    return v;
}

// Upward elimination pass turning an echelon form into reduced rows.
std::vector<std::vector<i64>> oracle_reduce_up(oracle_echelon e) {
    auto reduce_gcd = [](std::vector<i64>& row) {
        i64 g = 0;
        for (i64 v : row) g = std::gcd(g, v < 0 ? -v : v);
        if (g > 1)
            for (i64& v : row) v /= g;
    };
    for (std::size_t i = e.pivot_cols.size(); i-- > 0;) {
        std::size_t col = e.pivot_cols[i];
        for (std::size_t r = 0; r < i; ++r) {
            if (e.a[r][col] == 0) continue;
            i64 g = std::gcd(e.a[i][col] < 0 ? -e.a[i][col] : e.a[i][col],
                             e.a[r][col] < 0 ? -e.a[r][col] : e.a[r][col]);
            i64 f1 = e.a[i][col] / g, f2 = e.a[r][col] / g;
            for (std::size_t c = 0; c < e.a[r].size(); ++c)
                e.a[r][c] = checked_sub(checked_mul(f1, e.a[r][c]), checked_mul(f2, e.a[i][c]));
            reduce_gcd(e.a[r]);
        }
    }
    e.a.resize(e.pivot_cols.size());
    return e.a;
}

struct oracle_cycle_search {
    const int_matrix& m;
    i64 radius;
    i64 nodes = 0;
    std::vector<int> signs;  // fixed sign pattern of the current sweep
    std::vector<i64> x;
    std::vector<std::vector<i64>> rows;  // original plus reduced rows of the pattern
    std::vector<i64> rowsum;
    std::vector<std::vector<i64>> found;  // every candidate cycle kept so far

    oracle_cycle_search(const int_matrix& mat, i64 rad) : m(mat), radius(rad), x(mat.cols(), 0) {}

    // Restrict the magnitude range of column j so the row can still reach
    // zero: active columns contribute a mandatory unit each, the spare budget
    // spreads between the extreme per-unit coefficients.
    static void clamp_side(i64 s_eff, i64 c, i64 neg, i64 pos, i64 b_eff, i64& lo, i64& hi) {
        hi = std::min(hi, b_eff);
        i64 c1 = c - neg, r1 = -s_eff - neg * b_eff;
        if (c1 > 0)
            hi = std::min(hi, floor_div(r1, c1));
        else if (c1 < 0)
            lo = std::max(lo, ceil_div(r1, c1));
        else if (r1 < 0) {
            lo = 1;
            hi = 0;
            return;
        }
        i64 c2 = c - pos, r2 = -s_eff - pos * b_eff;
        if (c2 > 0)
            lo = std::max(lo, ceil_div(r2, c2));
        else if (c2 < 0)
            hi = std::min(hi, floor_div(r2, c2));
        else if (r2 > 0) {
            lo = 1;
            hi = 0;
        }
    }

    // Inside a fixed sign pattern every unassigned coordinate keeps the
    // pattern's sign with magnitude at least one, so a known cycle z kills the
    // whole prefix once it fits under every completion and is strictly below
    // the assigned part somewhere.
    bool prefix_contains_cycle(std::size_t j) const {
        for (const auto& z : found) {
            bool inside = true, strict = false;
            for (std::size_t c = 0; c < m.cols() && inside; ++c) {
                if (c < j) {
                    if ((z[c] > 0 && x[c] < z[c]) || (z[c] < 0 && x[c] > z[c]))
                        inside = false;
                    else if (x[c] != z[c])
                        strict = true;
                } else {
                    inside = z[c] == 0 || z[c] == signs[c];
                }
            }
            if (inside && strict) return true;
        }
        return false;
    }

    // Per-row signed reachability: s_eff carries the mandatory tail.
    bool rows_alive(std::size_t j, i64 budget) const {
        i64 active_tail = 0;
        for (std::size_t c = j; c < m.cols(); ++c) active_tail += signs[c] != 0 ? 1 : 0;
        i64 b_eff = budget - active_tail;
        if (b_eff < 0) return false;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            i64 mand = 0, neg = 0, pos = 0;
            for (std::size_t c = j; c < m.cols(); ++c) {
                if (signs[c] == 0) continue;
                i64 coef = signs[c] * rows[r][c];
                mand = checked_add(mand, coef);
                neg = std::min(neg, coef);
                pos = std::max(pos, coef);
            }
            i64 s_eff = checked_add(rowsum[r], mand);
            if (s_eff + neg * b_eff > 0 || s_eff + pos * b_eff < 0) return false;
        }
        return true;
    }

    void walk(std::size_t j, i64 budget) {
        if (++nodes > 100'000'000) throw budget_exceeded("oracle cycle enumeration too large");
        if (!rows_alive(j, budget)) return;
        if (prefix_contains_cycle(j)) return;
        if (j == m.cols()) {
            if (std::all_of(rowsum.begin(), rowsum.end(), [](i64 s) { return s == 0; }))
                found.push_back(x);
            return;
        }
        if (signs[j] == 0) {
            walk(j + 1, budget);
            return;
        }
        i64 lo = 1, hi = budget;
        i64 active_tail = 0;
        for (std::size_t c = j + 1; c < m.cols(); ++c) active_tail += signs[c] != 0 ? 1 : 0;
        for (std::size_t r = 0; r < rows.size() && lo <= hi; ++r) {
            i64 mand = 0, neg = 0, pos = 0;
            for (std::size_t c = j + 1; c < m.cols(); ++c) {
                if (signs[c] == 0) continue;
                i64 coef = signs[c] * rows[r][c];
                mand = checked_add(mand, coef);
                neg = std::min(neg, coef);
                pos = std::max(pos, coef);
            }
            clamp_side(checked_add(rowsum[r], mand), signs[j] * rows[r][j], neg, pos,
                       budget - active_tail, lo, hi);
        }
        for (i64 mag = lo; mag <= hi; ++mag) {
            i64 v = signs[j] * mag;
            x[j] = v;
            for (std::size_t r = 0; r < rows.size(); ++r)
                rowsum[r] = checked_add(rowsum[r], checked_mul(rows[r][j], v));
            walk(j + 1, budget - mag);
            for (std::size_t r = 0; r < rows.size(); ++r)
                rowsum[r] = checked_sub(rowsum[r], checked_mul(rows[r][j], v));
            x[j] = 0;
        }
    }

    void run() {
        const std::size_t n = m.cols();
        // All 3^n sign patterns, fewest nonzero coordinates first.
        std::vector<std::vector<int>> patterns;
        std::vector<int> cur(n, 0);
        std::function<void(std::size_t)> gen = [&](std::size_t j) {
            if (j == n) {
                patterns.push_back(cur);
                return;
            }
            for (int s : {0, 1, -1}) {
                cur[j] = s;
                gen(j + 1);
            }
            cur[j] = 0;
        };
        gen(0);
        std::stable_sort(patterns.begin(), patterns.end(),
                         [](const std::vector<int>& a, const std::vector<int>& b) {
                             long na = std::count_if(a.begin(), a.end(), [](int v) { return v != 0; });
                             long nb = std::count_if(b.begin(), b.end(), [](int v) { return v != 0; });
                             return na < nb;
                         });
        for (const auto& pattern : patterns) {
            if (std::all_of(pattern.begin(), pattern.end(), [](int s) { return s == 0; })) continue;
            signs = pattern;

            std::vector<std::size_t> active;
            for (std::size_t c = 0; c < n; ++c)
                if (signs[c] != 0) active.push_back(c);
            int_matrix restricted(m.rows(), active.size());
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t k = 0; k < active.size(); ++k)
                    restricted.at(r, k) = m.at(r, active[k]);
            oracle_echelon ech = oracle_eliminate(restricted);
            std::size_t kappa = active.size() - ech.pivot_cols.size();
            if (kappa == 0) continue;
            if (kappa == 1) {
                auto gen_vec = oracle_kernel_line(ech, active.size());
                if (!gen_vec) continue;
                for (int orient : {1, -1}) {
                    bool ok = true;
                    for (std::size_t k = 0; k < active.size() && ok; ++k) {
                        i64 e = orient * (*gen_vec)[k];
                        ok = e != 0 && (e > 0) == (signs[active[k]] > 0);
                    }
                    if (ok) {
                        std::vector<i64> v(n, 0);
                        for (std::size_t k = 0; k < active.size(); ++k)
                            v[active[k]] = orient * (*gen_vec)[k];
                        if (l1_norm(v) <= radius) found.push_back(std::move(v));
                        break;
                    }
                }
                continue;
            }

            rows.assign(m.rows(), std::vector<i64>(n, 0));
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < n; ++c) rows[r][c] = m.at(r, c);
            for (const auto& red : oracle_reduce_up(ech)) {
                std::vector<i64> full(n, 0);
                for (std::size_t k = 0; k < active.size(); ++k) full[active[k]] = red[k];
                rows.push_back(std::move(full));
            }
            rowsum.assign(rows.size(), 0);
            walk(0, radius);
        }
    }
};

} // namespace

graver_set oracle_graver(const int_matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) throw invalid_input("oracle_graver needs a nonempty matrix");
    i64 p = static_cast<i64>(oracle_largest_part(m));
    i64 delta = m.max_abs();
    // Radius straight from the definition-backed norm bound: (2 p delta + 1)^p.
    i64 radius = 1;
    i64 base = 2 * p * delta + 1;
    for (i64 i = 0; i < p; ++i) radius = sat_mul(radius, base);

    graver_set out;
    out.matrix = m;
    out.norm_cap = radius;

    oracle_echelon ech = oracle_eliminate(m);
    std::size_t kappa = m.cols() - ech.pivot_cols.size();
    if (kappa == 0) return out;  // trivial kernel
    if (kappa == 1) {
        auto v = oracle_kernel_line(ech, m.cols());
        if (v && !is_zero(m.mul(*v)) )
            throw internal_error("oracle kernel generator fails M*v = 0");
        if (v && l1_norm(*v) <= radius) {
            std::vector<i64> neg(v->size());
            for (std::size_t j = 0; j < v->size(); ++j) neg[j] = -(*v)[j];
            out.elements.push_back(std::move(neg));
            out.elements.push_back(*v);
            std::sort(out.elements.begin(), out.elements.end());
        }
        return out;
    }

    if (radius == huge) throw budget_exceeded("oracle radius saturated");
    oracle_cycle_search search(m, radius);
    search.run();
    // A candidate is indecomposable iff no other candidate sits properly
    // inside it conformally (candidates contain every indecomposable cycle).
    for (const auto& y : search.found) {
        bool keep = true;
        for (const auto& z : search.found) {
            if (&z == &y || z == y) continue;
            if (conformal_leq(z, y)) {
                keep = false;
                break;
            }
        }
        if (keep) out.elements.push_back(y);
    }
    std::sort(out.elements.begin(), out.elements.end());
    return out;
}

namespace {

// Enumerates all ways to distribute the job multiplicities over machines and
// scores each, exactly.
struct assignment_walker {
    std::size_t machines;
    const std::vector<i64>& counts;
    std::vector<std::vector<i64>> per_machine;  // machine -> per-type count
    i64 visited = 0;

    template <typename Score>
    void walk(std::size_t type, Score&& score) {
        if (type == counts.size()) {
            if (++visited > 20'000'000) throw budget_exceeded("oracle assignment space too large");
            score(per_machine);
            return;
        }
        distribute(type, 0, counts[type], score);
    }

    template <typename Score>
    void distribute(std::size_t type, std::size_t machine, i64 left, Score&& score) {
        if (machine + 1 == machines) {
            per_machine[machine][type] = left;
            walk(type + 1, score);
            per_machine[machine][type] = 0;
            return;
        }
        for (i64 take = 0; take <= left; ++take) {
            per_machine[machine][type] = take;
            distribute(type, machine + 1, left - take, score);
            per_machine[machine][type] = 0;
        }
    }
};

} // namespace

std::optional<i64> oracle_schedule(const uniform_instance& inst, sched_variant variant) {
    inst.validate();
    const std::size_t m = inst.machines();
    const std::size_t d = inst.types.size();
    std::vector<i64> counts(d);
    for (std::size_t j = 0; j < d; ++j) counts[j] = inst.types[j].count;

    // Block order mirrors the encoder: release/deadline variants process types
    // sorted by the respective field.
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    if (variant == sched_variant::cmax_release)
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return *inst.types[a].release < *inst.types[b].release;
        });
    if (variant == sched_variant::cmax_deadline)
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return *inst.types[a].deadline < *inst.types[b].deadline;
        });

    std::optional<i64> best;
    assignment_walker walker{m, counts, std::vector<std::vector<i64>>(m, std::vector<i64>(d, 0))};
    walker.walk(0, [&](const std::vector<std::vector<i64>>& assign) {
        std::optional<i64> value;
        switch (variant) {
            case sched_variant::cmax:
            case sched_variant::cmax_capacity: {
                i64 worst = 0;
                for (std::size_t i = 0; i < m; ++i) {
                    if (variant == sched_variant::cmax_capacity) {
                        i64 njobs = std::accumulate(assign[i].begin(), assign[i].end(), i64{0});
                        if (njobs > inst.capacities[i]) return;
                    }
                    i64 load = 0;
                    for (std::size_t j = 0; j < d; ++j)
                        load = checked_add(load, checked_mul(inst.types[j].processing, assign[i][j]));
                    worst = std::max(worst, ceil_div(load, inst.speeds[i]));
                }
                value = worst;
                break;
            }
            case sched_variant::cmin: {
                std::optional<i64> least;
                for (std::size_t i = 0; i < m; ++i) {
                    i64 load = 0;
                    for (std::size_t j = 0; j < d; ++j)
                        load = checked_add(load, checked_mul(inst.types[j].processing, assign[i][j]));
                    i64 t_i = floor_div(load, inst.speeds[i]);
                    least = least ? std::min(*least, t_i) : t_i;
                }
                value = *least;
                break;
            }
            case sched_variant::cmax_release:
            case sched_variant::cmax_deadline: {
                i64 worst = 0;
                for (std::size_t i = 0; i < m; ++i) {
                    i64 clock = 0;
                    for (std::size_t pos = 0; pos < d; ++pos) {
                        const job_type& ty = inst.types[order[pos]];
                        i64 start = clock;
                        if (variant == sched_variant::cmax_release)
                            start = std::max(start, *ty.release);
                        clock = checked_add(start, checked_mul(ty.processing, assign[i][order[pos]]));
                        if (variant == sched_variant::cmax_deadline && clock > *ty.deadline) return;
                    }
                    worst = std::max(worst, ceil_div(clock, inst.speeds[i]));
                }
                value = worst;
                break;
            }
            default:
                throw invalid_input("oracle_schedule handles the uniform variants only");
        }
        if (variant == sched_variant::cmin) {
            if (!best || *value > *best) best = value;
        } else {
            if (!best || *value < *best) best = value;
        }
    });
    return best;
}

std::optional<i64> oracle_rcmax(const unrelated_instance& inst) {
    inst.validate();
    const std::size_t m = inst.machines();
    const std::size_t d = inst.type_count();
    std::optional<i64> best;
    assignment_walker walker{m, inst.counts, std::vector<std::vector<i64>>(m, std::vector<i64>(d, 0))};
    walker.walk(0, [&](const std::vector<std::vector<i64>>& assign) {
        i64 worst = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& p_row = inst.ptimes[inst.machine_kinds[i]];
            i64 load = 0;
            for (std::size_t j = 0; j < d; ++j) {
                if (assign[i][j] == 0) continue;
                if (!p_row[j]) return;  // incompatible
                load = checked_add(load, checked_mul(*p_row[j], assign[i][j]));
            }
            worst = std::max(worst, load);
        }
        if (!best || worst < *best) best = worst;
    });
    return best;
}

rational oracle_qswc(const uniform_instance& inst) {
    inst.validate();
    const std::size_t m = inst.machines();
    const std::size_t d = inst.types.size();
    std::vector<i64> counts(d);
    for (std::size_t j = 0; j < d; ++j) counts[j] = inst.types[j].count;
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return checked_mul(*inst.types[a].weight, inst.types[b].processing) >
               checked_mul(*inst.types[b].weight, inst.types[a].processing);
    });

    std::optional<rational> best;
    assignment_walker walker{m, counts, std::vector<std::vector<i64>>(m, std::vector<i64>(d, 0))};
    walker.walk(0, [&](const std::vector<std::vector<i64>>& assign) {
        rational total = rational::whole(0);
        for (std::size_t i = 0; i < m; ++i) {
            i64 prefix = 0;
            for (std::size_t pos = 0; pos < d; ++pos) {
                const job_type& ty = inst.types[order[pos]];
                i64 cnt = assign[i][order[pos]];
                if (cnt > 0) {
                    i64 tri = checked_mul(ty.processing, checked_mul(cnt, checked_add(cnt, 1)) / 2);
                    i64 num = checked_mul(*ty.weight, checked_add(checked_mul(prefix, cnt), tri));
                    total = total.plus(rational(num, inst.speeds[i]));
                }
                prefix = checked_add(prefix, checked_mul(ty.processing, cnt));
            }
        }
        auto less = [](const rational& a, const rational& b) {
            return checked_mul(a.num, b.den) < checked_mul(b.num, a.den);
        };
        if (!best || less(total, *best)) best = total;
    });
    return *best;
}

namespace {

i64 min_coloring_sum(const graph& g, const std::vector<std::vector<std::size_t>>* classes) {
    const std::size_t n = g.size();
    if (n == 0) throw invalid_input("coloring oracle needs a nonempty graph");
    std::vector<i64> color(n, 0);
    i64 best = huge;

    // When classes are given, all vertices of an independent class share one
    // color; class representatives are colored instead of raw vertices.
    std::vector<std::vector<std::size_t>> units;
    if (classes) {
        units = *classes;
    } else {
        for (std::size_t v = 0; v < n; ++v) units.push_back({v});
    }

    auto conflicts = [&](std::size_t ui, i64 c) {
        for (std::size_t v : units[ui]) {
            for (std::size_t w : g.adj[v]) {
                if (color[w] == c) return true;
            }
        }
        return false;
    };
    std::function<void(std::size_t, i64)> rec = [&](std::size_t ui, i64 sum) {
        if (sum >= best) return;
        if (ui == units.size()) {
            best = sum;
            return;
        }
        for (i64 c = 1; c <= static_cast<i64>(n); ++c) {
            if (conflicts(ui, c)) continue;
            for (std::size_t v : units[ui]) color[v] = c;
            rec(ui + 1, sum + c * static_cast<i64>(units[ui].size()));
            for (std::size_t v : units[ui]) color[v] = 0;
        }
    };
    rec(0, 0);
    if (best == huge) throw internal_error("no proper coloring found with |V| colors");
    return best;
}

} // namespace

i64 oracle_mscol(const graph& g) {
    g.validate();
    return min_coloring_sum(g, nullptr);
}

i64 oracle_mscol_class_restricted(const graph& g) {
    std::vector<std::size_t> vertex_type;
    type_graph tg = graph_to_typegraph(g, &vertex_type);
    std::vector<std::vector<std::size_t>> units;
    for (std::size_t i = 0; i < tg.size(); ++i) {
        if (tg.types[i].kind == class_kind::independent) {
            std::vector<std::size_t> group;
            for (std::size_t v = 0; v < g.size(); ++v)
                if (vertex_type[v] == i) group.push_back(v);
            units.push_back(std::move(group));
        } else {
            for (std::size_t v = 0; v < g.size(); ++v)
                if (vertex_type[v] == i) units.push_back({v});
        }
    }
    return min_coloring_sum(g, &units);
}

} // namespace nfold
