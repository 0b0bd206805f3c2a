#include "centprune/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "centprune/error.hpp"

namespace centprune {

namespace {

constexpr double kDistanceFloor = 1e-9;

double abs_cosine(const Representative& a, const Representative& b) {
    double dot = 0.0;
    for (std::size_t k = 0; k < a.vector.size(); ++k) dot += a.vector[k] * b.vector[k];
    // Representatives are unit vectors; clamp the last-ulp overshoot.
    return std::min(std::abs(dot), 1.0);
}

void check_dims(const std::vector<Representative>& reps) {
    if (reps.empty()) throw Error(ErrorCode::DimensionMismatch, "no representatives");
    for (const auto& r : reps)
        if (r.vector.size() != reps[0].vector.size())
            throw Error(ErrorCode::DimensionMismatch, "representatives differ in length");
}

SimilarityMatrix init_matrix(const std::vector<Representative>& reps) {
    SimilarityMatrix w;
    w.n = static_cast<int>(reps.size());
    w.w.assign(static_cast<std::size_t>(w.n) * w.n, 0.0);
    w.is_zero.resize(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) w.is_zero[i] = reps[i].is_zero ? 1 : 0;
    for (int i = 0; i < w.n; ++i) w.at(i, i) = reps[i].is_zero ? 0.0 : 1.0;
    return w;
}

} // namespace

SimilarityMatrix similarity_matrix(const std::vector<Representative>& reps) {
    check_dims(reps);
    SimilarityMatrix w = init_matrix(reps);
    const int n = w.n;
    // Row i holds n-i-1 pairs; interleaving rows keeps the threads balanced.
#pragma omp parallel for schedule(static, 1)
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double s =
                (reps[i].is_zero || reps[j].is_zero) ? 0.0 : abs_cosine(reps[i], reps[j]);
            w.at(i, j) = s;
            w.at(j, i) = s;
        }
    }
    return w;
}

namespace serial {
SimilarityMatrix similarity_matrix(const std::vector<Representative>& reps) {
    check_dims(reps);
    SimilarityMatrix w = init_matrix(reps);
    for (int i = 0; i < w.n; ++i) {
        for (int j = i + 1; j < w.n; ++j) {
            const double s =
                (reps[i].is_zero || reps[j].is_zero) ? 0.0 : abs_cosine(reps[i], reps[j]);
            w.at(i, j) = s;
            w.at(j, i) = s;
        }
    }
    return w;
}
} // namespace serial

DistanceMatrix to_distance(const SimilarityMatrix& w) {
    DistanceMatrix d;
    d.n = w.n;
    d.is_zero = w.is_zero;
    d.d.assign(static_cast<std::size_t>(w.n) * w.n, 0.0);
    for (int i = 0; i < w.n; ++i)
        for (int j = 0; j < w.n; ++j)
            d.at(i, j) = (i == j) ? 0.0 : std::max(1.0 - w.at(i, j), kDistanceFloor);
    return d;
}

double subset_objective(const SimilarityMatrix& w, const std::vector<int>& keep) {
    double total = 0.0;
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = a + 1; b < keep.size(); ++b) total += w.at(keep[a], keep[b]);
    return total;
}

} // namespace centprune
