#pragma once

#include <vector>

#include "nfold/instance.hpp"
#include "nfold/matrix.hpp"

namespace nfold {

/// Row partition with pairwise disjoint column supports across parts.
struct row_partition {
    std::vector<std::vector<std::size_t>> parts;  // disjoint, cover all rows; each sorted
    std::size_t p = 0;                            // largest part size
    std::size_t S = 0;                            // number of parts
};

/// Finest column-independent partition: connected components of the
/// rows-sharing-a-column graph. All-zero rows become singleton parts.
row_partition column_independent_partition(const int_matrix& m);

struct nfold_params {
    std::size_t p_A = 0;
    std::size_t S_A = 0;
    std::size_t p_B = 0;  // max over bricks; 1 when every brick has no local rows
};

/// Partition parameters of the horizontal concatenation (A^1 ... A^n) and of each B^i.
nfold_params nfold_partition_params(const nfold_instance& inst);

} // namespace nfold
