#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "nfold/partition.hpp"

using namespace nfold;

namespace {

bool parts_column_independent(const int_matrix& m,
                              const std::vector<std::vector<std::size_t>>& parts) {
    for (std::size_t a = 0; a < parts.size(); ++a)
        for (std::size_t b = a + 1; b < parts.size(); ++b)
            for (std::size_t ra : parts[a])
                for (std::size_t rb : parts[b])
                    for (std::size_t c = 0; c < m.cols(); ++c)
                        if (m.at(ra, c) != 0 && m.at(rb, c) != 0) return false;
    return true;
}

} // namespace

TEST_CASE("diagonal matrix splits into singletons") {
    auto m = int_matrix::from_rows({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
    auto part = column_independent_partition(m);
    CHECK(part.parts == std::vector<std::vector<std::size_t>>{{0}, {1}, {2}});
    CHECK(part.p == 1);
    CHECK(part.S == 3);
}

TEST_CASE("overlapping rows merge") {
    auto m = int_matrix::from_rows({{1, 1, 0}, {0, 1, 1}});
    auto part = column_independent_partition(m);
    CHECK(part.parts == std::vector<std::vector<std::size_t>>{{0, 1}});
    CHECK(part.p == 2);
    CHECK(part.S == 1);
}

TEST_CASE("shared first column links rows one and three") {
    auto m = int_matrix::from_rows({{1, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 1}});
    auto part = column_independent_partition(m);
    CHECK(part.parts == std::vector<std::vector<std::size_t>>{{0, 2}, {1}});
    CHECK(part.p == 2);
    CHECK(part.S == 2);
}

TEST_CASE("all-zero rows become singleton parts") {
    auto m = int_matrix::from_rows({{0, 0}, {1, 1}, {0, 0}});
    auto part = column_independent_partition(m);
    CHECK(part.S == 3);
    CHECK(part.p == 1);
}

TEST_CASE("finest partition law") {
    std::mt19937_64 rng(20240010);
    for (int it = 0; it < 100; ++it) {
        auto m = testing::random_matrix(rng, 4, 5, 2);
        auto part = column_independent_partition(m);
        CHECK(part.p >= 1);
        CHECK(part.S >= 1);
        CHECK(part.p <= m.rows());
        CHECK(part.S <= m.rows());
        REQUIRE(parts_column_independent(m, part.parts));

        // Union covers all rows exactly once.
        std::vector<std::size_t> seen;
        for (const auto& part_rows : part.parts)
            seen.insert(seen.end(), part_rows.begin(), part_rows.end());
        std::sort(seen.begin(), seen.end());
        REQUIRE(seen.size() == m.rows());
        for (std::size_t r = 0; r < m.rows(); ++r) REQUIRE(seen[r] == r);

        // Merging any two parts keeps column independence.
        if (part.parts.size() >= 2) {
            auto merged = part.parts;
            merged[0].insert(merged[0].end(), merged[1].begin(), merged[1].end());
            merged.erase(merged.begin() + 1);
            CHECK(parts_column_independent(m, merged));
        }

        // Splitting any multi-row part breaks it: the part is support-connected.
        for (const auto& rows : part.parts) {
            if (rows.size() < 2) continue;
            for (std::uint64_t mask = 1; mask + 1 < (1ull << rows.size()); ++mask) {
                std::vector<std::vector<std::size_t>> split(2);
                for (std::size_t k = 0; k < rows.size(); ++k)
                    split[(mask >> k) & 1].push_back(rows[k]);
                CHECK_FALSE(parts_column_independent(m, split));
            }
        }
    }
}

TEST_CASE("row permutation permutes the partition") {
    std::mt19937_64 rng(20240011);
    for (int it = 0; it < 50; ++it) {
        auto m = testing::random_matrix(rng, 4, 4, 2);
        auto base = column_independent_partition(m);
        std::vector<std::size_t> perm(m.rows());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        int_matrix shuffled(m.rows(), m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) shuffled.at(perm[r], c) = m.at(r, c);
        auto moved = column_independent_partition(shuffled);
        CHECK(moved.p == base.p);
        CHECK(moved.S == base.S);
        // Parts map through the permutation.
        auto canon = [](std::vector<std::vector<std::size_t>> parts) {
            for (auto& p : parts) std::sort(p.begin(), p.end());
            std::sort(parts.begin(), parts.end());
            return parts;
        };
        std::vector<std::vector<std::size_t>> mapped;
        for (const auto& rows : base.parts) {
            std::vector<std::size_t> q;
            for (std::size_t r : rows) q.push_back(perm[r]);
            mapped.push_back(q);
        }
        CHECK(canon(mapped) == canon(moved.parts));
    }
}

TEST_CASE("nfold parameters of a dense single brick") {
    nfold_instance inst;
    brick bk;
    bk.A = int_matrix::from_rows({{1, 1}, {1, 1}, {1, 1}});
    bk.B = int_matrix(0, 2);
    bk.lower = {0, 0};
    bk.upper = {1, 1};
    inst.bricks.push_back(bk);
    inst.b_top = {0, 0, 0};
    inst.obj.c = {0, 0};
    auto params = nfold_partition_params(inst);
    CHECK(params.p_A == 3);
    CHECK(params.S_A == 1);
    CHECK(params.p_B == 1);  // no local rows anywhere
}
