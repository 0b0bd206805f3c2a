#pragma once

#include <vector>

#include "centprune/representatives.hpp"

namespace centprune {

// Symmetric matrix of absolute cosine similarities between filter
// representatives. Entries lie in [0, 1]; the diagonal is 1 except for
// zero-flagged filters, whose rows and columns (diagonal included) are 0.
struct SimilarityMatrix {
    int n = 0;
    std::vector<double> w;               // n*n, row-major
    std::vector<unsigned char> is_zero;  // per-filter zero flags

    double at(int i, int j) const { return w[static_cast<std::size_t>(i) * n + j]; }
    double& at(int i, int j) { return w[static_cast<std::size_t>(i) * n + j]; }
};

// Shortest-path edge lengths derived from W: d = max(1 - w, 1e-9) off the
// diagonal, 0 on it. The floor keeps identical filters from forming
// zero-length edges.
struct DistanceMatrix {
    int n = 0;
    std::vector<double> d;
    std::vector<unsigned char> is_zero;

    double at(int i, int j) const { return d[static_cast<std::size_t>(i) * n + j]; }
    double& at(int i, int j) { return d[static_cast<std::size_t>(i) * n + j]; }
};

// Pairwise |cos| over the upper triangle, mirrored for exact symmetry.
// OpenMP-parallel across rows; every entry is written exactly once.
SimilarityMatrix similarity_matrix(const std::vector<Representative>& reps);

namespace serial {
SimilarityMatrix similarity_matrix(const std::vector<Representative>& reps);
}

DistanceMatrix to_distance(const SimilarityMatrix& w);

// Total retained similarity over unordered pairs of `keep` (the subset
// objective the scoring methods approximate minimizing).
double subset_objective(const SimilarityMatrix& w, const std::vector<int>& keep);

} // namespace centprune
