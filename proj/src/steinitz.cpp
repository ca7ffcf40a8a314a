#include "nfold/steinitz.hpp"

#include <algorithm>
#include <unordered_set>

#include "nfold/errors.hpp"
#include "nfold/matrix.hpp"

namespace nfold {

namespace {

i64 norm_after(const std::vector<i64>& prefix, const std::vector<i64>& v) {
    i64 m = 0;
    for (std::size_t d = 0; d < prefix.size(); ++d) {
        i64 s = checked_add(prefix[d], v[d]);
        if (s < 0) s = checked_neg(s);
        if (s > m) m = s;
    }
    return m;
}

struct backtracker {
    const std::vector<std::vector<i64>>& vs;
    i64 bound;
    std::vector<std::size_t> order;
    std::vector<i64> prefix;
    std::unordered_set<unsigned long long> dead;  // used-masks that cannot be completed

    backtracker(const std::vector<std::vector<i64>>& vectors, std::size_t dim, i64 b)
        : vs(vectors), bound(b), prefix(dim, 0) {}

    bool run(unsigned long long used, std::size_t placed) {
        if (placed == vs.size()) return true;
        if (dead.count(used)) return false;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (used & (1ull << i)) continue;
            if (norm_after(prefix, vs[i]) > bound) continue;
            for (std::size_t d = 0; d < prefix.size(); ++d) prefix[d] += vs[i][d];
            order.push_back(i);
            if (run(used | (1ull << i), placed + 1)) return true;
            order.pop_back();
            for (std::size_t d = 0; d < prefix.size(); ++d) prefix[d] -= vs[i][d];
        }
        dead.insert(used);
        return false;
    }
};

} // namespace

std::vector<std::size_t> steinitz_reorder(const std::vector<std::vector<i64>>& vectors, i64 delta) {
    if (vectors.empty()) return {};
    const std::size_t dim = vectors[0].size();
    if (dim == 0) throw invalid_input("steinitz_reorder needs dimension >= 1");
    if (vectors.size() > 63) throw budget_exceeded("steinitz_reorder limited to 63 vectors");
    std::vector<i64> total(dim, 0);
    for (const auto& v : vectors) {
        if (v.size() != dim) throw invalid_input("steinitz_reorder vectors must share one dimension");
        if (linf_norm(v) > delta)
            throw invalid_input("steinitz_reorder vector exceeds the stated delta");
        for (std::size_t d = 0; d < dim; ++d) total[d] = checked_add(total[d], v[d]);
    }
    if (!is_zero(total)) throw invalid_input("steinitz_reorder vectors must sum to zero");

    const i64 bound = checked_mul(static_cast<i64>(dim), delta);

    // Greedy: always append the vector minimizing the next prefix norm.
    std::vector<std::size_t> order;
    std::vector<bool> used(vectors.size(), false);
    std::vector<i64> prefix(dim, 0);
    bool greedy_ok = true;
    for (std::size_t step = 0; step < vectors.size() && greedy_ok; ++step) {
        std::size_t best = vectors.size();
        i64 best_norm = 0;
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            if (used[i]) continue;
            i64 n = norm_after(prefix, vectors[i]);
            if (best == vectors.size() || n < best_norm) {
                best = i;
                best_norm = n;
            }
        }
        if (best_norm > bound) {
            greedy_ok = false;
            break;
        }
        used[best] = true;
        order.push_back(best);
        for (std::size_t d = 0; d < dim; ++d) prefix[d] += vectors[best][d];
    }
    if (greedy_ok) return order;

    backtracker bt(vectors, dim, bound);
    if (!bt.run(0, 0))
        throw internal_error("no ordering within m*delta found for a zero-sum input");
    return bt.order;
}

i64 max_prefix_norm(const std::vector<std::vector<i64>>& vectors,
                    const std::vector<std::size_t>& order) {
    if (vectors.empty()) return 0;
    std::vector<i64> prefix(vectors[0].size(), 0);
    i64 worst = 0;
    for (std::size_t i : order) {
        for (std::size_t d = 0; d < prefix.size(); ++d)
            prefix[d] = checked_add(prefix[d], vectors[i][d]);
        worst = std::max(worst, linf_norm(prefix));
    }
    return worst;
}

} // namespace nfold
