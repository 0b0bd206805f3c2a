#include "centprune/oracle.hpp"

#include <string>

#include "centprune/centrality.hpp"
#include "centprune/error.hpp"

namespace centprune {

namespace {
constexpr double kObjectiveTol = 1e-12;
}

OracleResult optimal_subset(const SimilarityMatrix& w, double p, int limit) {
    const int n = w.n;
    if (n > limit)
        throw Error(ErrorCode::TooLarge, "layer has " + std::to_string(n) +
                                             " filters, oracle limit is " + std::to_string(limit));
    const int k = keep_count(n, p);

    OracleResult best;
    best.objective = 0.0;
    best.subsets_examined = 0;

    if (k == 0) {
        best.subsets_examined = 1;
        return best;
    }

    std::vector<int> comb(k);
    std::vector<double> partial(k + 1, 0.0); // partial[t]: objective of comb[0..t)
    bool have_best = false;

    // Depth-first lexicographic walk; partial sums add one member's pairwise
    // contribution at a time.
    int depth = 0;
    comb[0] = 0;
    while (depth >= 0) {
        if (comb[depth] > n - (k - depth)) {
            --depth;
            if (depth >= 0) ++comb[depth];
            continue;
        }
        double add = 0.0;
        for (int t = 0; t < depth; ++t) add += w.at(comb[t], comb[depth]);
        partial[depth + 1] = partial[depth] + add;
        if (depth + 1 == k) {
            ++best.subsets_examined;
            const double obj = partial[k];
            if (!have_best || obj < best.objective - kObjectiveTol) {
                best.objective = obj;
                best.keep = comb;
                have_best = true;
            }
            ++comb[depth];
        } else {
            ++depth;
            comb[depth] = comb[depth - 1] + 1;
        }
    }
    return best;
}

} // namespace centprune
