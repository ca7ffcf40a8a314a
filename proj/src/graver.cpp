#include "nfold/graver.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "nfold/errors.hpp"
#include "nfold/partition.hpp"

namespace nfold {

i64 lemma2_bound(i64 p, i64 delta) {
    if (p < 1 || delta < 0) throw invalid_input("lemma2_bound needs p >= 1, delta >= 0");
    return sat_pow(sat_add(sat_mul(2, sat_mul(p, delta)), 1), p);
}

i64 nfold_graver_bound(i64 S_A, i64 p_A, i64 p_B, i64 delta) {
    if (S_A < 1 || p_A < 1 || p_B < 1 || delta < 0)
        throw invalid_input("nfold_graver_bound needs S_A, p_A, p_B >= 1 and delta >= 0");
    i64 lb = lemma2_bound(p_B, delta);
    i64 base = sat_add(sat_mul(2, sat_mul(p_A, sat_mul(delta, lb))), 1);
    return sat_mul(S_A, sat_mul(lb, sat_pow(base, p_A)));
}

namespace {
i64 laplace_det(const std::vector<std::vector<i64>>& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    i64 det = 0;
    std::vector<std::vector<i64>> minor(n - 1, std::vector<i64>(n - 1));
    for (std::size_t k = 0; k < n; ++k) {
        if (a[0][k] == 0) continue;
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t jj = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) minor[i - 1][jj++] = a[i][j];
        }
        i64 term = checked_mul(a[0][k], laplace_det(minor));
        det = checked_add(det, k % 2 == 0 ? term : checked_neg(term));
    }
    return det;
}

// Kernel dimensions 0 and 1 have closed-form Graver bases: empty, or the
// primitive generator and its negation. Detected via maximal minors of
// (cols-1)-row subsets; anything else falls back to enumeration.
struct kernel_probe {
    int dim = -1;                // -1: undetermined (rank <= cols-2 or too big)
    std::vector<i64> generator;  // primitive, kernel dim 1 only
};

kernel_probe probe_small_kernel(const int_matrix& m) {
    kernel_probe out;
    const std::size_t n = m.cols();
    if (n == 1) {
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (m.at(r, 0) != 0) {
                out.dim = 0;
                return out;
            }
        out.dim = 1;
        out.generator = {1};
        return out;
    }
    if (n - 1 > 5 || m.rows() < n - 1) return out;
    std::vector<std::size_t> pick(n - 1);
    std::function<bool(std::size_t, std::size_t)> choose = [&](std::size_t idx, std::size_t from) {
        if (idx == n - 1) {
            std::vector<i64> v(n);
            std::vector<std::vector<i64>> sub(n - 1, std::vector<i64>(n - 1));
            bool nonzero = false;
            for (std::size_t drop = 0; drop < n; ++drop) {
                for (std::size_t i = 0; i < n - 1; ++i) {
                    std::size_t jj = 0;
                    for (std::size_t j = 0; j < n; ++j)
                        if (j != drop) sub[i][jj++] = m.at(pick[i], j);
                }
                i64 d = laplace_det(sub);
                v[drop] = drop % 2 == 0 ? d : (d == 0 ? 0 : checked_neg(d));
                nonzero = nonzero || v[drop] != 0;
            }
            if (!nonzero) return false;
            // Nonzero maximal minor vector: rank is cols-1 or cols.
            if (is_zero(m.mul(v))) {
                i64 g = 0;
                for (i64 e : v) g = std::gcd(g, e < 0 ? -e : e);
                for (i64& e : v) e /= g;
                out.dim = 1;
                out.generator = std::move(v);
            } else {
                out.dim = 0;  // a row escapes the (cols-1)-dim row space
            }
            return true;
        }
        for (std::size_t r = from; r + (n - 2 - idx) < m.rows(); ++r) {
            pick[idx] = r;
            if (choose(idx + 1, r + 1)) return true;
        }
        return false;
    };
    choose(0, 0);
    return out;
}


// DFS over the conformal box of y looking for a nonzero proper sub-cycle.
// Coordinates are filled left to right; partial row sums are pruned by the
// largest movement the remaining coordinates can still produce.
struct conformal_search {
    const int_matrix& m;
    std::span<const i64> y;
    std::vector<i64> z;
    std::vector<i64> rowsum;
    std::vector<std::vector<i64>> suffix_move;  // per row, per column index: max |M_rj'|*|y_j'| over j' >= j

    conformal_search(const int_matrix& mat, std::span<const i64> target)
        : m(mat), y(target), z(mat.cols(), 0), rowsum(mat.rows(), 0) {
        suffix_move.assign(m.rows(), std::vector<i64>(m.cols() + 1, 0));
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t j = m.cols(); j-- > 0;) {
                i64 a = m.at(r, j) < 0 ? -m.at(r, j) : m.at(r, j);
                i64 b = y[j] < 0 ? -y[j] : y[j];
                suffix_move[r][j] = checked_add(suffix_move[r][j + 1], checked_mul(a, b));
            }
    }

    bool feasible_tail(std::size_t j) const {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            i64 s = rowsum[r] < 0 ? -rowsum[r] : rowsum[r];
            if (s > suffix_move[r][j]) return false;
        }
        return true;
    }

    // Returns true when a nonzero cycle z with z conformal to y and z != y exists.
    bool find(std::size_t j, bool all_equal_so_far) {
        if (!feasible_tail(j)) return false;
        if (j == m.cols()) {
            if (all_equal_so_far) return false;  // z == y
            if (is_zero(z)) return false;
            for (i64 s : rowsum)
                if (s != 0) return false;
            return true;
        }
        i64 hi = y[j] < 0 ? -y[j] : y[j];
        i64 sgn = y[j] < 0 ? -1 : 1;
        for (i64 v = 0; v <= hi; ++v) {
            z[j] = sgn * v;
            for (std::size_t r = 0; r < m.rows(); ++r)
                rowsum[r] = checked_add(rowsum[r], checked_mul(m.at(r, j), z[j]));
            if (find(j + 1, all_equal_so_far && v == hi)) return true;
            for (std::size_t r = 0; r < m.rows(); ++r)
                rowsum[r] = checked_sub(rowsum[r], checked_mul(m.at(r, j), z[j]));
            z[j] = 0;
        }
        return false;
    }
};

// Sign patterns make the remaining movement of a row directional: active
// columns contribute one mandatory unit each, free budget spreads between the
// most negative and most positive per-unit coefficients. Clamps the magnitude
// range [lo, hi] of the current column (per-unit contribution c) so the row
// can still reach zero. s_eff carries rowsum + mandatory tail, b_eff the
// budget left after mandatory tail units.
void clamp_signed(i64 s_eff, i64 c, i64 neg, i64 pos, i64 b_eff, i64& lo, i64& hi) {
    hi = std::min(hi, b_eff);
    // (c - neg) * w <= -s_eff - neg * b_eff
    i64 c1 = c - neg, r1 = checked_sub(checked_neg(s_eff), checked_mul(neg, b_eff));
    if (c1 > 0)
        hi = std::min(hi, floor_div(r1, c1));
    else if (c1 < 0)
        lo = std::max(lo, ceil_div(r1, c1));
    else if (r1 < 0) {
        lo = 1;
        hi = 0;
        return;
    }
    // (c - pos) * w >= -s_eff - pos * b_eff
    i64 c2 = c - pos, r2 = checked_sub(checked_neg(s_eff), checked_mul(pos, b_eff));
    if (c2 > 0)
        lo = std::max(lo, ceil_div(r2, c2));
    else if (c2 < 0)
        hi = std::min(hi, floor_div(r2, c2));
    else if (r2 > 0) {
        lo = 1;
        hi = 0;
    }
}

// Integer reduced row echelon (gcd-normalized rows); rank comes back as the
// number of pivot rows kept.
std::vector<std::vector<i64>> integer_rref(std::vector<std::vector<i64>> rows) {
    const std::size_t n = rows.empty() ? 0 : rows[0].size();
    auto reduce = [](std::vector<i64>& row) {
        i64 g = 0;
        for (i64 v : row) g = std::gcd(g, v < 0 ? -v : v);
        if (g > 1)
            for (i64& v : row) v /= g;
    };
    std::size_t lead = 0;
    std::vector<std::vector<i64>> out;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = lead;
        while (p < rows.size() && rows[p][col] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[lead], rows[p]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == lead || rows[r][col] == 0) continue;
            i64 g = std::gcd(rows[lead][col] < 0 ? -rows[lead][col] : rows[lead][col],
                             rows[r][col] < 0 ? -rows[r][col] : rows[r][col]);
            i64 f1 = rows[lead][col] / g, f2 = rows[r][col] / g;
            for (std::size_t c = 0; c < n; ++c)
                rows[r][c] = checked_sub(checked_mul(f1, rows[r][c]),
                                         checked_mul(f2, rows[lead][c]));
            reduce(rows[r]);
        }
        ++lead;
        if (lead == rows.size()) break;
    }
    for (std::size_t r = 0; r < std::min(lead, rows.size()); ++r) out.push_back(rows[r]);
    return out;
}

// One DFS per sign pattern: every vector is visited in its exact pattern, so
// a found cycle z prunes a prefix whenever z fits conformally under every
// possible completion (strictly, somewhere on the assigned part).
struct cycle_enumerator {
    const int_matrix& m;
    i64 cap;
    i64 node_budget;
    i64 nodes = 0;
    std::vector<int> sigma;                    // current sign pattern
    std::vector<i64> x;
    std::vector<std::vector<i64>> check_rows;  // original + eliminated rows, per pattern
    std::vector<i64> rowsum;
    // Per check row, suffix over sigma-active columns j' >= j of the signed
    // per-unit contributions sigma_j' * row_j'.
    std::vector<std::vector<i64>> suffix_mand;  // sum (mandatory single units)
    std::vector<std::vector<i64>> suffix_neg;   // most negative coefficient (<= 0)
    std::vector<std::vector<i64>> suffix_pos;   // most positive coefficient (>= 0)
    std::vector<i64> suffix_active;             // number of active columns
    std::vector<std::vector<i64>> found;

    cycle_enumerator(const int_matrix& mat, i64 radius, i64 budget)
        : m(mat), cap(radius), node_budget(budget), x(mat.cols(), 0) {}

    bool dominated(std::size_t j) const {
        for (const auto& z : found) {
            bool fits = true, strict = false;
            for (std::size_t k = 0; k < m.cols() && fits; ++k) {
                if (k < j) {
                    if ((z[k] > 0 && x[k] < z[k]) || (z[k] < 0 && x[k] > z[k]))
                        fits = false;
                    else if (x[k] != z[k])
                        strict = true;
                } else if (sigma[k] == 0) {
                    fits = z[k] == 0;
                } else {
                    // future magnitudes are at least one in the pattern's sign
                    fits = z[k] == 0 || z[k] == sigma[k];
                }
            }
            if (fits && strict) return true;
        }
        return false;
    }

    void dfs(std::size_t j, i64 budget_left) {
        if (++nodes > node_budget)
            throw budget_exceeded("cycle enumeration intractable at this size");
        // Every check row must still be able to return to zero.
        {
            i64 b_eff = budget_left - suffix_active[j];
            if (b_eff < 0) return;
            for (std::size_t r = 0; r < check_rows.size(); ++r) {
                i64 s_eff = checked_add(rowsum[r], suffix_mand[r][j]);
                if (checked_add(s_eff, checked_mul(suffix_neg[r][j], b_eff)) > 0) return;
                if (checked_add(s_eff, checked_mul(suffix_pos[r][j], b_eff)) < 0) return;
            }
        }
        if (dominated(j)) return;
        if (j == m.cols()) {
            if (std::all_of(rowsum.begin(), rowsum.end(), [](i64 s) { return s == 0; }))
                found.push_back(x);
            return;
        }
        if (sigma[j] == 0) {
            dfs(j + 1, budget_left);
            return;
        }
        // Magnitude range from the signed completability inequalities.
        i64 lo = 1, hi = budget_left;
        i64 b_eff = budget_left - suffix_active[j + 1];
        for (std::size_t r = 0; r < check_rows.size() && lo <= hi; ++r)
            clamp_signed(checked_add(rowsum[r], suffix_mand[r][j + 1]),
                         sigma[j] * check_rows[r][j], suffix_neg[r][j + 1], suffix_pos[r][j + 1],
                         b_eff, lo, hi);
        for (i64 mag = lo; mag <= hi; ++mag) {
            i64 v = sigma[j] * mag;
            x[j] = v;
            for (std::size_t r = 0; r < check_rows.size(); ++r)
                rowsum[r] = checked_add(rowsum[r], checked_mul(check_rows[r][j], v));
            dfs(j + 1, budget_left - mag);
            for (std::size_t r = 0; r < check_rows.size(); ++r)
                rowsum[r] = checked_sub(rowsum[r], checked_mul(check_rows[r][j], v));
            x[j] = 0;
        }
    }

    void run() {
        const std::size_t n = m.cols();
        std::vector<std::vector<int>> patterns;
        std::vector<int> cur(n, -1);
        for (;;) {
            if (std::any_of(cur.begin(), cur.end(), [](int s) { return s != 0; }))
                patterns.push_back(cur);
            bool carried = false;
            for (std::size_t j = n; j-- > 0;) {
                if (cur[j] < 1) {
                    ++cur[j];
                    for (std::size_t k = j + 1; k < n; ++k) cur[k] = -1;
                    carried = true;
                    break;
                }
            }
            if (!carried) break;
        }
        run_patterns(patterns);
    }

    void run_patterns(std::vector<std::vector<int>>& patterns) {
        // Sparse patterns first: their cycles prune the dense cones.
        std::stable_sort(patterns.begin(), patterns.end(),
                         [](const std::vector<int>& a, const std::vector<int>& b) {
                             auto nz = [](const std::vector<int>& s) {
                                 return std::count_if(s.begin(), s.end(),
                                                      [](int v) { return v != 0; });
                             };
                             return nz(a) < nz(b);
                         });
        const std::size_t n = m.cols();
        for (const auto& pattern : patterns) {
            sigma = pattern;
            std::vector<std::size_t> active;
            for (std::size_t j = 0; j < n; ++j)
                if (sigma[j] != 0) active.push_back(j);

            // Presolve the pattern-restricted matrix: a trivial kernel means
            // no cycles here, a one-dimensional one pins them to a single ray.
            int_matrix restricted(m.rows(), active.size());
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t k = 0; k < active.size(); ++k)
                    restricted.at(r, k) = m.at(r, active[k]);
            kernel_probe probe = probe_small_kernel(restricted);
            if (probe.dim == 0) continue;
            if (probe.dim == 1) {
                int flip = 0;  // 0: mismatch, +1 or -1: matching orientation
                for (int orient : {1, -1}) {
                    bool ok = true;
                    for (std::size_t k = 0; k < active.size() && ok; ++k) {
                        i64 e = orient * probe.generator[k];
                        ok = (e > 0) == (sigma[active[k]] > 0) && e != 0;
                    }
                    if (ok) flip = orient;
                }
                if (flip != 0) {
                    std::vector<i64> v(n, 0);
                    for (std::size_t k = 0; k < active.size(); ++k)
                        v[active[k]] = flip * probe.generator[k];
                    if (l1_norm(v) <= cap) found.push_back(std::move(v));
                }
                continue;
            }

            // Kernel dimension two or more: sweep with the original rows plus
            // the eliminated rows of the restricted system, which expose
            // cross-row forcings to the per-row bounds.
            check_rows.assign(m.rows(), std::vector<i64>(n, 0));
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t j = 0; j < n; ++j) check_rows[r][j] = m.at(r, j);
            std::vector<std::vector<i64>> rr(m.rows(), std::vector<i64>(active.size()));
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t k = 0; k < active.size(); ++k) rr[r][k] = restricted.at(r, k);
            for (const auto& row : integer_rref(std::move(rr))) {
                std::vector<i64> full(n, 0);
                for (std::size_t k = 0; k < active.size(); ++k) full[active[k]] = row[k];
                check_rows.push_back(std::move(full));
            }

            rowsum.assign(check_rows.size(), 0);
            suffix_mand.assign(check_rows.size(), std::vector<i64>(n + 1, 0));
            suffix_neg.assign(check_rows.size(), std::vector<i64>(n + 1, 0));
            suffix_pos.assign(check_rows.size(), std::vector<i64>(n + 1, 0));
            suffix_active.assign(n + 1, 0);
            for (std::size_t j = n; j-- > 0;)
                suffix_active[j] = suffix_active[j + 1] + (sigma[j] != 0 ? 1 : 0);
            for (std::size_t r = 0; r < check_rows.size(); ++r)
                for (std::size_t j = n; j-- > 0;) {
                    i64 signed_coef = sigma[j] == 0 ? 0 : sigma[j] * check_rows[r][j];
                    suffix_mand[r][j] = checked_add(suffix_mand[r][j + 1], signed_coef);
                    suffix_neg[r][j] = std::min(suffix_neg[r][j + 1], signed_coef);
                    suffix_pos[r][j] = std::max(suffix_pos[r][j + 1], signed_coef);
                }
            dfs(0, cap);
        }
    }
};

constexpr i64 default_node_budget = 50'000'000;


} // namespace

namespace detail {

std::vector<std::vector<i64>> enumerate_cycle_candidates(const int_matrix& m, i64 cap,
                                                         i64 node_budget) {
    cycle_enumerator en(m, cap, node_budget);
    en.run();
    return std::move(en.found);
}

} // namespace detail

bool is_indecomposable(const int_matrix& m, std::span<const i64> y) {
    if (y.size() != m.cols()) throw invalid_input("is_indecomposable dimension mismatch");
    if (is_zero(y)) throw invalid_input("is_indecomposable needs y != 0");
    if (!is_zero(m.mul(y))) throw invalid_input("is_indecomposable needs M*y = 0");
    conformal_search search(m, y);
    return !search.find(0, true);
}

graver_set graver_basis(const int_matrix& m, std::optional<i64> cap) {
    if (m.rows() == 0 || m.cols() == 0) throw invalid_input("graver_basis needs a nonempty matrix");
    i64 radius = lemma2_bound(static_cast<i64>(column_independent_partition(m).p), m.max_abs());
    if (cap && *cap < radius) radius = *cap;

    graver_set out;
    out.matrix = m;
    out.norm_cap = radius;

    kernel_probe probe = probe_small_kernel(m);
    if (probe.dim == 0) return out;
    if (probe.dim == 1) {
        if (l1_norm(probe.generator) <= radius) {
            std::vector<i64> neg(probe.generator.size());
            for (std::size_t j = 0; j < neg.size(); ++j) neg[j] = -probe.generator[j];
            out.elements.push_back(std::move(neg));
            out.elements.push_back(probe.generator);
            std::sort(out.elements.begin(), out.elements.end());
        }
        return out;
    }

    if (radius == huge) throw budget_exceeded("graver enumeration radius saturated");
    auto candidates = detail::enumerate_cycle_candidates(m, radius, default_node_budget);
    for (const auto& y : candidates)
        if (is_indecomposable(m, y)) out.elements.push_back(y);
    std::sort(out.elements.begin(), out.elements.end());
    return out;
}

std::vector<std::vector<i64>> conformal_decompose(const int_matrix& m, std::span<const i64> y,
                                                  const graver_set& g) {
    if (y.size() != m.cols()) throw invalid_input("conformal_decompose dimension mismatch");
    if (!is_zero(m.mul(y))) throw invalid_input("conformal_decompose needs M*y = 0");
    std::vector<i64> rest(y.begin(), y.end());
    std::vector<std::vector<i64>> parts;
    while (!is_zero(rest)) {
        bool advanced = false;
        for (const auto& el : g.elements) {
            if (conformal_leq(el, rest)) {
                for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= el[j];
                parts.push_back(el);
                advanced = true;
                break;
            }
        }
        if (!advanced)
            throw internal_error("no conformal element fits the residual: graver set incomplete");
    }
    return parts;
}

} // namespace nfold
