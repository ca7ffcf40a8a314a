#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "nfold/errors.hpp"
#include "nfold/steinitz.hpp"

using namespace nfold;

namespace {

bool is_permutation_of_all(const std::vector<std::size_t>& order, std::size_t n) {
    if (order.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (std::size_t i : order) {
        if (i >= n || seen[i]) return false;
        seen[i] = true;
    }
    return true;
}

} // namespace

TEST_CASE("one-dimensional pairs alternate") {
    std::vector<std::vector<i64>> vs{{1}, {-1}};
    auto order = steinitz_reorder(vs, 1);
    CHECK(is_permutation_of_all(order, 2));
    CHECK(max_prefix_norm(vs, order) <= 1);

    std::vector<std::vector<i64>> vs4{{1}, {1}, {-1}, {-1}};
    auto order4 = steinitz_reorder(vs4, 1);
    CHECK(is_permutation_of_all(order4, 4));
    CHECK(max_prefix_norm(vs4, order4) <= 1);
}

TEST_CASE("two-dimensional pinned example stays within 2*delta") {
    std::vector<std::vector<i64>> vs{{2, 0}, {0, 2}, {-2, -2}, {1, 1}, {-1, -1}};
    auto order = steinitz_reorder(vs, 2);
    CHECK(is_permutation_of_all(order, 5));
    CHECK(max_prefix_norm(vs, order) <= 4);
}

TEST_CASE("preconditions are rejected") {
    CHECK_THROWS_AS(steinitz_reorder({{1}, {1}}, 1), invalid_input);            // nonzero sum
    CHECK_THROWS_AS(steinitz_reorder({{3}, {-3}}, 2), invalid_input);           // oversized vector
    CHECK_THROWS_AS(steinitz_reorder({{1, 0}, {-1}}, 1), invalid_input);        // ragged dims
    CHECK(steinitz_reorder({}, 1).empty());
}

TEST_CASE("random zero-sum sequences stay within m*delta") {
    std::mt19937_64 rng(20240030);
    for (int it = 0; it < 200; ++it) {
        std::uniform_int_distribution<std::size_t> dim_d(1, 3), count_d(2, 8);
        std::uniform_int_distribution<i64> delta_d(1, 3);
        std::size_t dim = dim_d(rng);
        i64 delta = delta_d(rng);
        auto vs = testing::random_zero_sum(rng, dim, count_d(rng), delta);
        auto order = steinitz_reorder(vs, delta);
        REQUIRE(is_permutation_of_all(order, vs.size()));
        REQUIRE(max_prefix_norm(vs, order) <= static_cast<i64>(dim) * delta);
    }
}

TEST_CASE("reversing the input never breaks the bound") {
    std::mt19937_64 rng(20240031);
    for (int it = 0; it < 50; ++it) {
        auto vs = testing::random_zero_sum(rng, 2, 6, 2);
        auto rev = vs;
        std::reverse(rev.begin(), rev.end());
        CHECK(max_prefix_norm(vs, steinitz_reorder(vs, 2)) <= 4);
        CHECK(max_prefix_norm(rev, steinitz_reorder(rev, 2)) <= 4);
    }
}

TEST_CASE("duplicates are handled positionally") {
    std::vector<std::vector<i64>> vs{{1}, {1}, {1}, {-1}, {-1}, {-1}};
    auto order = steinitz_reorder(vs, 1);
    CHECK(is_permutation_of_all(order, 6));
    CHECK(max_prefix_norm(vs, order) <= 1);
}
