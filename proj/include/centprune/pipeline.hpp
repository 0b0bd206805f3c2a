#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "centprune/report.hpp"

namespace centprune {

// One layer scored with one method. Scores are absent for cs (it has a
// greedy trace instead of a score vector).
struct LayerRun {
    std::string layer;
    int n = 0;
    double p = 0.0;
    PruneSelection sel;
    std::optional<std::vector<double>> scores;
    std::optional<std::vector<int>> trace;
    double objective = 0.0; // retained similarity of the keep set
};

// Scores one loaded layer. Representatives and the similarity matrix are
// computed on demand (wdc/bc/cs need them, l1/gm do not).
LayerRun run_method(Method method, const LayerSpec& spec, const FilterSet& filters, double p);

struct ScoreRequest {
    std::string manifest_path;
    Method method = Method::Wdc;
    std::vector<std::string> layers;                 // empty = all conv layers
    std::optional<double> ratio;
    std::map<std::string, double> ratio_per_layer;   // overrides `layers` when non-empty
    bool emit_scores = false;
};

struct OracleRequest {
    std::string manifest_path;
    std::string layer;
    double ratio = 0.0;
    int limit = 20;
};

struct CompareRequest {
    std::string manifest_path;
    double ratio = 0.0;
    std::vector<Method> methods;
    std::vector<std::string> layers; // empty = all conv layers
};

ScoreReport run_score(const ScoreRequest& request);
OracleReport run_oracle(const OracleRequest& request);
CompareReport run_compare(const CompareRequest& request);

} // namespace centprune
