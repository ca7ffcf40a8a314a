#pragma once

#include <random>

#include "nfold/instance.hpp"
#include "nfold/matrix.hpp"

namespace testing {

using nfold::i64;

inline nfold::int_matrix random_matrix(std::mt19937_64& rng, std::size_t max_rows,
                                       std::size_t max_cols, i64 delta) {
    std::uniform_int_distribution<std::size_t> rows_d(1, max_rows), cols_d(1, max_cols);
    std::uniform_int_distribution<i64> entry(-delta, delta);
    nfold::int_matrix m(rows_d(rng), cols_d(rng));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = entry(rng);
    return m;
}

struct instance_options {
    std::size_t max_bricks = 3;
    std::size_t max_top_rows = 2;
    std::size_t max_local_rows = 2;
    std::size_t max_width = 3;
    i64 delta = 2;
    i64 bound_lo = -3;
    i64 bound_hi = 3;
    i64 max_box_volume = 200'000;
    bool force_feasible = false;
};

/// Random valid instance; roughly half are built around a known feasible point.
inline nfold::nfold_instance random_instance(std::mt19937_64& rng, const instance_options& opt) {
    using namespace nfold;
    for (;;) {
        std::uniform_int_distribution<std::size_t> bricks_d(1, opt.max_bricks);
        std::uniform_int_distribution<std::size_t> rows_d(0, opt.max_top_rows);
        std::uniform_int_distribution<i64> entry(-opt.delta, opt.delta);
        nfold_instance inst;
        const std::size_t n = bricks_d(rng);
        const std::size_t r = std::max<std::size_t>(1, rows_d(rng));
        i64 volume = 1;
        for (std::size_t i = 0; i < n; ++i) {
            std::uniform_int_distribution<std::size_t> width_d(1, opt.max_width);
            std::uniform_int_distribution<std::size_t> local_d(0, opt.max_local_rows);
            brick bk;
            const std::size_t t = width_d(rng);
            const std::size_t s = local_d(rng);
            bk.A = int_matrix(r, t);
            bk.B = int_matrix(s, t);
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t c = 0; c < t; ++c) bk.A.at(a, c) = entry(rng);
            for (std::size_t a = 0; a < s; ++a)
                for (std::size_t c = 0; c < t; ++c) bk.B.at(a, c) = entry(rng);
            for (std::size_t c = 0; c < t; ++c) {
                std::uniform_int_distribution<i64> bound(opt.bound_lo, opt.bound_hi);
                i64 a = bound(rng), b = bound(rng);
                bk.lower.push_back(std::min(a, b));
                bk.upper.push_back(std::max(a, b));
                volume *= std::max(a, b) - std::min(a, b) + 1;
            }
            bk.b_local.assign(s, 0);
            inst.bricks.push_back(std::move(bk));
        }
        if (volume > opt.max_box_volume) continue;

        // Right-hand sides: anchor half of the instances at a random box point.
        std::bernoulli_distribution anchored(0.5);
        bool anchor = opt.force_feasible || anchored(rng);
        std::vector<i64> x_hat;
        for (const auto& bk : inst.bricks)
            for (std::size_t c = 0; c < bk.width(); ++c) {
                std::uniform_int_distribution<i64> pick(bk.lower[c], bk.upper[c]);
                x_hat.push_back(pick(rng));
            }
        inst.b_top.assign(r, 0);
        std::size_t col0 = 0;
        for (auto& bk : inst.bricks) {
            std::span<const i64> xi(x_hat.data() + col0, bk.width());
            auto top = bk.A.mul(xi);
            auto local = bk.B.mul(xi);
            for (std::size_t k = 0; k < r; ++k) inst.b_top[k] += top[k];
            for (std::size_t k = 0; k < bk.local_rows(); ++k) bk.b_local[k] = local[k];
            col0 += bk.width();
        }
        if (!anchor) {
            std::uniform_int_distribution<i64> shift(-2, 2);
            for (auto& v : inst.b_top) v += shift(rng);
            for (auto& bk : inst.bricks)
                for (auto& v : bk.b_local) v += shift(rng);
        }

        std::bernoulli_distribution linear(0.5);
        const std::size_t nt = inst.total_cols();
        if (linear(rng)) {
            inst.obj.kind = objective_kind::linear_max;
            std::uniform_int_distribution<i64> coef(-2, 2);
            for (std::size_t j = 0; j < nt; ++j) inst.obj.c.push_back(coef(rng));
        } else {
            inst.obj.kind = objective_kind::sep_convex_min;
            std::uniform_int_distribution<i64> quad(0, 2), lin(-2, 2);
            for (std::size_t j = 0; j < nt; ++j) {
                inst.obj.a.push_back(quad(rng));
                inst.obj.b.push_back(lin(rng));
            }
        }
        inst.validate();
        return inst;
    }
}

/// Zero-sum vector sequence with entries within [-delta, delta].
inline std::vector<std::vector<i64>> random_zero_sum(std::mt19937_64& rng, std::size_t dim,
                                                     std::size_t count, i64 delta) {
    std::uniform_int_distribution<i64> entry(-delta, delta);
    std::vector<std::vector<i64>> vs(count, std::vector<i64>(dim, 0));
    for (std::size_t d = 0; d < dim; ++d) {
        // Fill pairwise so the column sums stay zero, entries stay in range.
        for (std::size_t i = 0; i + 1 < count; i += 2) {
            i64 v = entry(rng);
            vs[i][d] = v;
            vs[i + 1][d] = -v;
        }
    }
    return vs;
}

} // namespace testing
