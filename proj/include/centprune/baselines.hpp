#pragma once

#include <vector>

#include "centprune/centrality.hpp"
#include "centprune/tensor.hpp"

namespace centprune {

// Negated l1 norm per filter, so that "higher score = more prunable" holds
// like everywhere else and the smallest-norm filter goes first.
ScoreVector l1_scores(const FilterSet& filters);

// Negated sum of euclidean distances to every other filter; filters closest
// to the rest (nearest the geometric median) are pruned first. Requires at
// least two filters.
ScoreVector gm_scores(const FilterSet& filters);

namespace serial {
ScoreVector gm_scores(const FilterSet& filters);
}

std::vector<double> l1_norms(const FilterSet& filters);

// Greedy pairwise-similarity pruning: repeatedly take the most similar
// unpruned pair and drop the member with the smaller l1 norm. When only one
// unpruned filter is left but the budget still demands pruning (p = 1), it is
// pruned directly. trace_out, when given, receives the pruned indices in
// greedy order (the trace the report exposes for cs).
PruneSelection cs_prune(const SimilarityMatrix& w, const std::vector<double>& l1norms, double p,
                        std::vector<int>* trace_out = nullptr);

// Pruned indices in greedy order.
std::vector<int> cs_prune_trace(const SimilarityMatrix& w, const std::vector<double>& l1norms,
                                double p);

} // namespace centprune
