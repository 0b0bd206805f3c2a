#pragma once

#include <cstdint>
#include <vector>

#include "centprune/similarity.hpp"

namespace centprune {

struct OracleResult {
    std::vector<int> keep;
    double objective = 0.0;
    std::uint64_t subsets_examined = 0;
};

// Exhaustive minimizer of the retained-similarity objective over all keep
// sets of size keep_count(n, p). Combinations are walked in lexicographic
// order with an incrementally maintained partial objective; a candidate
// replaces the running best only when it is smaller by more than 1e-12, so
// ties resolve to the lexicographically smallest keep set. Test-scale only:
// n above `limit` (default 20) is refused.
OracleResult optimal_subset(const SimilarityMatrix& w, double p, int limit = 20);

} // namespace centprune
