#include "centprune/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "centprune/error.hpp"

namespace centprune {

namespace {

double filter_distance(const FilterSet& filters, int i, int j) {
    const auto a = filters.filter(i);
    const auto b = filters.filter(j);
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        s += diff * diff;
    }
    return std::sqrt(s);
}

double gm_score_one(const FilterSet& filters, int i) {
    double sum = 0.0;
    for (int j = 0; j < filters.n; ++j)
        if (j != i) sum += filter_distance(filters, i, j);
    return -sum;
}

} // namespace

std::vector<double> l1_norms(const FilterSet& filters) {
    std::vector<double> norms(filters.n, 0.0);
    for (int i = 0; i < filters.n; ++i) {
        double s = 0.0;
        for (double x : filters.filter(i)) s += std::abs(x);
        norms[i] = s;
    }
    return norms;
}

ScoreVector l1_scores(const FilterSet& filters) {
    ScoreVector out;
    out.method = Method::L1;
    out.scores = l1_norms(filters);
    for (double& s : out.scores) s = -s;
    return out;
}

ScoreVector gm_scores(const FilterSet& filters) {
    if (filters.n < 2) throw Error(ErrorCode::TooFewFilters, "gm scoring needs at least 2 filters");
    ScoreVector out;
    out.method = Method::Gm;
    out.scores.assign(filters.n, 0.0);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < filters.n; ++i) out.scores[i] = gm_score_one(filters, i);
    return out;
}

namespace serial {
ScoreVector gm_scores(const FilterSet& filters) {
    if (filters.n < 2) throw Error(ErrorCode::TooFewFilters, "gm scoring needs at least 2 filters");
    ScoreVector out;
    out.method = Method::Gm;
    out.scores.assign(filters.n, 0.0);
    for (int i = 0; i < filters.n; ++i) out.scores[i] = gm_score_one(filters, i);
    return out;
}
} // namespace serial

std::vector<int> cs_prune_trace(const SimilarityMatrix& w, const std::vector<double>& l1norms,
                                double p) {
    const int n = w.n;
    if (static_cast<int>(l1norms.size()) != n)
        throw Error(ErrorCode::DimensionMismatch, "l1 norm vector length differs from W");
    const int quota = n - keep_count(n, p);

    std::vector<char> pruned(n, 0);
    std::vector<int> trace;
    trace.reserve(quota);
    while (static_cast<int>(trace.size()) < quota) {
        int bi = -1, bj = -1;
        for (int i = 0; i < n; ++i) {
            if (pruned[i]) continue;
            for (int j = i + 1; j < n; ++j) {
                if (pruned[j]) continue;
                if (bi == -1 || w.at(i, j) > w.at(bi, bj)) {
                    bi = i;
                    bj = j;
                }
            }
        }
        int victim;
        if (bi == -1) {
            // No pair left; p = 1 forces the last survivor out too.
            victim = -1;
            for (int i = 0; i < n; ++i)
                if (!pruned[i]) victim = i;
        } else if (l1norms[bi] < l1norms[bj]) {
            victim = bi;
        } else if (l1norms[bj] < l1norms[bi]) {
            victim = bj;
        } else {
            victim = std::max(bi, bj);
        }
        pruned[victim] = 1;
        trace.push_back(victim);
    }
    return trace;
}

PruneSelection cs_prune(const SimilarityMatrix& w, const std::vector<double>& l1norms, double p,
                        std::vector<int>* trace_out) {
    const std::vector<int> trace = cs_prune_trace(w, l1norms, p);
    if (trace_out) *trace_out = trace;
    PruneSelection sel;
    sel.p = p;
    sel.prune = trace;
    std::sort(sel.prune.begin(), sel.prune.end());
    std::vector<char> pruned(w.n, 0);
    for (int i : trace) pruned[i] = 1;
    for (int i = 0; i < w.n; ++i)
        if (!pruned[i]) sel.keep.push_back(i);
    return sel;
}

} // namespace centprune
