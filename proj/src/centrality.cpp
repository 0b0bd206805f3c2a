#include "centprune/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "centprune/error.hpp"

namespace centprune {

namespace {

constexpr double kPathRelTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool close_lengths(double a, double b) {
    return std::abs(a - b) <= kPathRelTol * std::max(a, b);
}

// One Brandes pass: Dijkstra from `s` on the complete graph with lengths d,
// then dependency accumulation over the shortest-path DAG. Returns the
// per-node dependency of s (delta), zero at s itself.
std::vector<double> brandes_source(const DistanceMatrix& d, int s) {
    const int n = d.n;
    std::vector<double> dist(n, kInf);
    std::vector<double> sigma(n, 0.0);
    std::vector<std::vector<int>> preds(n);
    std::vector<char> settled(n, 0);
    std::vector<int> order;
    order.reserve(n);

    dist[s] = 0.0;
    sigma[s] = 1.0;
    for (int round = 0; round < n; ++round) {
        int v = -1;
        for (int u = 0; u < n; ++u)
            if (!settled[u] && dist[u] < kInf && (v == -1 || dist[u] < dist[v])) v = u;
        if (v == -1) break;
        settled[v] = 1;
        order.push_back(v);
        for (int u = 0; u < n; ++u) {
            if (settled[u] || u == v) continue;
            const double alt = dist[v] + d.at(v, u);
            if (dist[u] == kInf || (alt < dist[u] && !close_lengths(alt, dist[u]))) {
                dist[u] = alt;
                sigma[u] = sigma[v];
                preds[u].assign(1, v);
            } else if (close_lengths(alt, dist[u])) {
                sigma[u] += sigma[v];
                preds[u].push_back(v);
            }
        }
    }

    std::vector<double> delta(n, 0.0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int w = *it;
        for (int v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
    }
    delta[s] = 0.0;
    return delta;
}

ScoreVector apply_zero_flags(ScoreVector scores, const std::vector<unsigned char>& is_zero) {
    for (std::size_t i = 0; i < is_zero.size(); ++i)
        if (is_zero[i]) scores.scores[i] = kInf;
    return scores;
}

} // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::Wdc: return "wdc";
        case Method::Bc: return "bc";
        case Method::L1: return "l1";
        case Method::Gm: return "gm";
        case Method::Cs: return "cs";
        case Method::Oracle: return "oracle";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    if (name == "wdc") return Method::Wdc;
    if (name == "bc") return Method::Bc;
    if (name == "l1") return Method::L1;
    if (name == "gm") return Method::Gm;
    if (name == "cs") return Method::Cs;
    if (name == "oracle") return Method::Oracle;
    throw Error(ErrorCode::InvalidCounts, "unknown method '" + name + "'");
}

int keep_count(int n, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidRatio, "ratio must lie in [0, 1]");
    const double raw = (1.0 - p) * static_cast<double>(n);
    int k = static_cast<int>(std::ceil(raw - 1e-9));
    return std::clamp(k, 0, n);
}

ScoreVector wdc_scores(const SimilarityMatrix& w) {
    ScoreVector out;
    out.method = Method::Wdc;
    out.scores.assign(w.n, 0.0);
    for (int v = 0; v < w.n; ++v) {
        double s = 0.0;
        for (int u = 0; u < w.n; ++u)
            if (u != v) s += w.at(u, v);
        out.scores[v] = s;
    }
    return apply_zero_flags(std::move(out), w.is_zero);
}

ScoreVector bc_scores(const DistanceMatrix& d) {
    const int n = d.n;
    std::vector<double> contrib(static_cast<std::size_t>(n) * n, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < n; ++s) {
        const std::vector<double> delta = brandes_source(d, s);
        std::copy(delta.begin(), delta.end(), contrib.begin() + static_cast<std::size_t>(s) * n);
    }
    ScoreVector out;
    out.method = Method::Bc;
    out.scores.assign(n, 0.0);
    for (int s = 0; s < n; ++s)
        for (int v = 0; v < n; ++v) out.scores[v] += contrib[static_cast<std::size_t>(s) * n + v];
    // Each unordered {s, t} pair was visited from both endpoints.
    for (double& x : out.scores) x *= 0.5;
    return apply_zero_flags(std::move(out), d.is_zero);
}

namespace serial {
ScoreVector bc_scores(const DistanceMatrix& d) {
    const int n = d.n;
    ScoreVector out;
    out.method = Method::Bc;
    out.scores.assign(n, 0.0);
    for (int s = 0; s < n; ++s) {
        const std::vector<double> delta = brandes_source(d, s);
        for (int v = 0; v < n; ++v) out.scores[v] += delta[v];
    }
    for (double& x : out.scores) x *= 0.5;
    return apply_zero_flags(std::move(out), d.is_zero);
}
} // namespace serial

PruneSelection rank_filters(const ScoreVector& scores, double p) {
    const int n = static_cast<int>(scores.scores.size());
    const int keep_n = keep_count(n, p);

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (scores.scores[a] != scores.scores[b]) return scores.scores[a] > scores.scores[b];
        return a > b;
    });

    PruneSelection sel;
    sel.p = p;
    sel.prune.assign(idx.begin(), idx.begin() + (n - keep_n));
    sel.keep.assign(idx.begin() + (n - keep_n), idx.end());
    std::sort(sel.prune.begin(), sel.prune.end());
    std::sort(sel.keep.begin(), sel.keep.end());
    return sel;
}

} // namespace centprune
