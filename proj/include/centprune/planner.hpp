#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "centprune/centrality.hpp"
#include "centprune/manifest.hpp"

namespace centprune {

struct LayerCost {
    std::uint64_t params = 0;
    std::uint64_t macs = 0;

    LayerCost& operator+=(const LayerCost& o) {
        params += o.params;
        macs += o.macs;
        return *this;
    }
    bool operator==(const LayerCost&) const = default;
};

struct PruningPlan {
    Method method = Method::Wdc;
    std::map<std::string, PruneSelection> per_layer;
    std::map<std::string, double> p_by_layer;
    LayerCost before;
    LayerCost after;
};

// Parameter and MAC count for one layer at the given active widths.
// conv:            params = af * kh * kw * aic (+ af bias),
//                  macs   = af * kh * kw * aic * out_h * out_w
// fully_connected: params = aic * af (+ af bias), macs = aic * af
LayerCost layer_cost(const LayerSpec& spec, int active_in_channels, int active_filters);

// Whole-model plan: sums per-layer costs before and after applying the
// selections, propagating channel coupling along next_layer links (scaled by
// flatten_factor into a fully connected successor). Layers without a
// selection keep all filters but still feel upstream channel loss.
PruningPlan build_plan(const ModelManifest& manifest,
                       const std::map<std::string, PruneSelection>& selections,
                       Method method = Method::Wdc);

} // namespace centprune
