#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "nfold/errors.hpp"
#include "nfold/graver.hpp"
#include "nfold/oracle.hpp"
#include "nfold/solver.hpp"

using namespace nfold;

namespace {

// Two bricks tied by x1 + x2 = 6, no local rows, c = (1, 3), box [0,5]^2.
nfold_instance coupled_pair() {
    nfold_instance inst;
    for (int i = 0; i < 2; ++i) {
        brick bk;
        bk.A = int_matrix::from_rows({{1}});
        bk.B = int_matrix(0, 1);
        bk.lower = {0};
        bk.upper = {5};
        inst.bricks.push_back(bk);
    }
    inst.b_top = {6};
    inst.obj.kind = objective_kind::linear_max;
    inst.obj.c = {1, 3};
    inst.validate();
    return inst;
}

} // namespace

TEST_CASE("solver norm cap on the coupled pair") {
    // Constraint-free bricks carry unit-vector local Graver sets, so the cap
    // collapses to S_A * (2 p_A delta + 1) = 3 here, under the box cap 10.
    CHECK(solver_norm_cap(coupled_pair()) == 3);
}

TEST_CASE("best_step pinned example") {
    auto inst = coupled_pair();
    i64 cap = solver_norm_cap(inst);
    std::vector<i64> x{5, 1};
    auto step = best_step(inst, x, 1, cap);
    REQUIRE(step.has_value());
    CHECK(step->direction == std::vector<i64>{-1, 1});
    CHECK(step->gain == 2);

    std::vector<i64> opt{1, 5};
    CHECK_FALSE(best_step(inst, opt, 1, cap).has_value());
}

TEST_CASE("best_step returns the exact maximizer within a larger cap") {
    auto inst = coupled_pair();
    std::vector<i64> x{5, 1};
    auto step = best_step(inst, x, 1, 10);
    REQUIRE(step.has_value());
    CHECK(step->direction == std::vector<i64>{-4, 4});
    CHECK(step->gain == 8);
}

TEST_CASE("augment_to_optimal pinned runs") {
    auto inst = coupled_pair();
    solution sol = augment_to_optimal(inst, {5, 1});
    CHECK(sol.status == solve_status::optimal);
    CHECK(sol.x == std::vector<i64>{1, 5});
    CHECK(sol.objective_value == 16);

    // Single-point box: optimal immediately, zero iterations.
    nfold_instance pinned = inst;
    for (auto& bk : pinned.bricks) {
        bk.lower = {3};
        bk.upper = {3};
    }
    solution sp = augment_to_optimal(pinned, {3, 3});
    CHECK(sp.iterations == 0);
    CHECK(sp.status == solve_status::optimal);
    CHECK(sp.x == std::vector<i64>{3, 3});
}

TEST_CASE("initial_feasible pinned cases") {
    // clamp(0) already feasible: zero right-hand sides.
    nfold_instance cheap;
    {
        brick bk;
        bk.A = int_matrix::from_rows({{1, 1}});
        bk.B = int_matrix(0, 2);
        bk.lower = {-1, -1};
        bk.upper = {1, 1};
        cheap.bricks.push_back(bk);
        cheap.b_top = {0};
        cheap.obj.c = {1, 1};
    }
    auto x0 = initial_feasible(cheap);
    REQUIRE(x0.has_value());
    CHECK(*x0 == std::vector<i64>{0, 0});

    nfold_instance sum4;
    {
        brick bk;
        bk.A = int_matrix::from_rows({{1, 1}});
        bk.B = int_matrix(0, 2);
        bk.lower = {0, 0};
        bk.upper = {5, 5};
        sum4.bricks.push_back(bk);
        sum4.b_top = {4};
        sum4.obj.c = {1, 2};
    }
    auto f = initial_feasible(sum4);
    REQUIRE(f.has_value());
    CHECK(check_feasible(sum4, *f));

    nfold_instance no_way = sum4;
    no_way.b_top = {7};
    no_way.bricks[0].upper = {3, 3};
    CHECK_FALSE(initial_feasible(no_way).has_value());
}

TEST_CASE("solve pinned cases") {
    nfold_instance sum4;
    {
        brick bk;
        bk.A = int_matrix::from_rows({{1, 1}});
        bk.B = int_matrix(0, 2);
        bk.lower = {0, 0};
        bk.upper = {5, 5};
        sum4.bricks.push_back(bk);
        sum4.b_top = {4};
        sum4.obj.c = {1, 2};
    }
    solution sol = solve(sum4);
    REQUIRE(sol.status == solve_status::optimal);
    CHECK(sol.objective_value == 8);
    CHECK(sol.x == std::vector<i64>{0, 4});

    nfold_instance no_way = sum4;
    no_way.b_top = {7};
    no_way.bricks[0].upper = {3, 3};
    CHECK(solve(no_way).status == solve_status::infeasible);
}

TEST_CASE("separable convex minimization lands on the vertex") {
    // minimize (x - 2)^2 over [0,5]: a = 1, b = -4, optimum -4 at x = 2.
    nfold_instance inst;
    brick bk;
    bk.A = int_matrix::from_rows({{0}});
    bk.B = int_matrix(0, 1);
    bk.lower = {0};
    bk.upper = {5};
    inst.bricks.push_back(bk);
    inst.b_top = {0};
    inst.obj.kind = objective_kind::sep_convex_min;
    inst.obj.a = {1};
    inst.obj.b = {-4};
    solution sol = solve(inst);
    REQUIRE(sol.status == solve_status::optimal);
    CHECK(sol.x == std::vector<i64>{2});
    CHECK(sol.objective_value == -4);

    solution ref = oracle_ip_solve(inst);
    CHECK(ref.objective_value == -4);
}

TEST_CASE("solve equals the exhaustive oracle") {
    std::mt19937_64 rng(20240040);
    int optimal_seen = 0, infeasible_seen = 0;
    for (int it = 0; it < 60; ++it) {
        auto inst = testing::random_instance(rng, {});
        solution ref = oracle_ip_solve(inst);
        solution mine = solve(inst);
        REQUIRE(mine.status == ref.status);
        if (ref.status == solve_status::optimal) {
            REQUIRE(mine.objective_value == ref.objective_value);
            REQUIRE(check_feasible(inst, mine.x));
            ++optimal_seen;
        } else {
            ++infeasible_seen;
        }
    }
    CHECK(optimal_seen > 0);
    CHECK(infeasible_seen > 0);
}

TEST_CASE("best_step dominates every feasible graver move") {
    std::mt19937_64 rng(20240041);
    int tested = 0;
    while (tested < 15) {
        testing::instance_options opt;
        opt.max_bricks = 2;
        opt.max_width = 2;
        opt.max_local_rows = 1;
        opt.delta = 1;
        opt.bound_lo = -2;
        opt.bound_hi = 2;
        auto inst = testing::random_instance(rng, opt);
        auto x0 = initial_feasible(inst);
        if (!x0) continue;
        graver_set g;
        try {
            g = graver_basis(assemble(inst));
        } catch (const budget_exceeded&) {
            continue;
        }
        i64 cap = solver_norm_cap(inst);
        auto step = best_step(inst, *x0, 1, cap);
        i64 best_gain = step ? step->gain : 0;
        for (const auto& dir : g.elements) {
            std::vector<i64> moved = *x0;
            for (std::size_t j = 0; j < moved.size(); ++j) moved[j] += dir[j];
            if (!check_feasible(inst, moved)) continue;
            i64 gain = objective_max_sense(inst, moved) - objective_max_sense(inst, *x0);
            REQUIRE(best_gain >= gain);
        }
        ++tested;
    }
}

TEST_CASE("solving twice is deterministic") {
    std::mt19937_64 rng(20240042);
    for (int it = 0; it < 10; ++it) {
        auto inst = testing::random_instance(rng, {});
        solution a = solve(inst);
        solution b = solve(inst);
        CHECK(a.status == b.status);
        CHECK(a.x == b.x);
        CHECK(a.objective_value == b.objective_value);
        CHECK(a.iterations == b.iterations);
    }
}

TEST_CASE("augment rejects an infeasible start") {
    auto inst = coupled_pair();
    CHECK_THROWS_AS(augment_to_optimal(inst, {0, 0}), invalid_input);
}
