#pragma once

#include <string>
#include <vector>

#include "centprune/similarity.hpp"

namespace centprune {

enum class Method { Wdc, Bc, L1, Gm, Cs, Oracle };

const char* method_name(Method m);
Method method_from_name(const std::string& name); // throws InvalidCounts on unknown names

// Per-filter scores; higher means more prunable. Zero-flagged filters carry
// +infinity so they are pruned before anything else.
struct ScoreVector {
    Method method = Method::Wdc;
    std::vector<double> scores;
};

struct PruneSelection {
    std::vector<int> keep;   // sorted ascending
    std::vector<int> prune;  // sorted ascending
    double p = 0.0;
};

// ceil((1 - p) * n) with a 1e-9 snap so ratios like 1/3 that are not exactly
// representable still land on the intended integer.
int keep_count(int n, double p);

// Sum of incident similarity per node.
ScoreVector wdc_scores(const SimilarityMatrix& w);

// Weighted betweenness (Dijkstra per source with shortest-path counting),
// unnormalized, endpoints excluded, each unordered pair counted once.
// Path-length ties use relative tolerance 1e-12. The OpenMP version keeps one
// contribution row per source and reduces them in source order, so scores are
// identical for any thread count.
ScoreVector bc_scores(const DistanceMatrix& d);

namespace serial {
ScoreVector bc_scores(const DistanceMatrix& d);
}

// Prunes the highest-scoring filters down to the keep budget; score ties are
// broken by pruning the higher index first.
PruneSelection rank_filters(const ScoreVector& scores, double p);

} // namespace centprune
