#include "nfold/partition.hpp"

#include <algorithm>
#include <numeric>

#include "nfold/errors.hpp"

namespace nfold {

namespace {

struct union_find {
    std::vector<std::size_t> parent;
    explicit union_find(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace

row_partition column_independent_partition(const int_matrix& m) {
    if (m.rows() == 0) throw invalid_input("partition of a matrix with no rows");
    union_find uf(m.rows());
    // Rows sharing any column with nonzero entries end up in the same part.
    for (std::size_t c = 0; c < m.cols(); ++c) {
        std::size_t first = m.rows();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (m.at(r, c) == 0) continue;
            if (first == m.rows())
                first = r;
            else
                uf.unite(first, r);
        }
    }
    std::vector<std::vector<std::size_t>> groups(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) groups[uf.find(r)].push_back(r);
    row_partition out;
    for (auto& g : groups) {
        if (g.empty()) continue;
        out.parts.push_back(std::move(g));
    }
    // Parts are already ordered by smallest member (union-find roots are minima).
    out.S = out.parts.size();
    for (const auto& part : out.parts) out.p = std::max(out.p, part.size());
    return out;
}

nfold_params nfold_partition_params(const nfold_instance& inst) {
    inst.validate();
    nfold_params out;
    int_matrix a_concat = inst.bricks.front().A;
    for (std::size_t i = 1; i < inst.bricks.size(); ++i) a_concat = a_concat.hconcat(inst.bricks[i].A);
    if (a_concat.rows() == 0) {
        out.p_A = 1;  // no top rows: trivially one empty-support pseudo-part
        out.S_A = 1;
    } else {
        auto pa = column_independent_partition(a_concat);
        out.p_A = pa.p;
        out.S_A = pa.S;
    }
    out.p_B = 1;
    for (const auto& bk : inst.bricks) {
        if (bk.local_rows() == 0) continue;
        auto pb = column_independent_partition(bk.B);
        out.p_B = std::max(out.p_B, pb.p);
    }
    return out;
}

} // namespace nfold
