#include "centprune/planner.hpp"

#include <string>

#include "centprune/error.hpp"

namespace centprune {

LayerCost layer_cost(const LayerSpec& spec, int active_in_channels, int active_filters) {
    if (active_in_channels < 1 || active_in_channels > spec.c)
        throw Error(ErrorCode::InvalidCounts,
                    "layer '" + spec.name + "': active input channels out of range");
    if (active_filters < 1 || active_filters > spec.n)
        throw Error(ErrorCode::InvalidCounts, "layer '" + spec.name + "': active filters out of range");

    const auto af = static_cast<std::uint64_t>(active_filters);
    const auto aic = static_cast<std::uint64_t>(active_in_channels);
    LayerCost cost;
    if (spec.kind == LayerKind::Conv) {
        const std::uint64_t kernel = static_cast<std::uint64_t>(spec.kernel_h) * spec.kernel_w;
        cost.params = af * kernel * aic + (spec.has_bias ? af : 0);
        cost.macs = af * kernel * aic * static_cast<std::uint64_t>(spec.out_h) * spec.out_w;
    } else {
        cost.params = aic * af + (spec.has_bias ? af : 0);
        cost.macs = aic * af;
    }
    return cost;
}

PruningPlan build_plan(const ModelManifest& manifest,
                       const std::map<std::string, PruneSelection>& selections, Method method) {
    for (const auto& [name, sel] : selections) {
        const LayerSpec* layer = manifest.find(name);
        if (!layer) throw Error(ErrorCode::UnknownLayer, "selection targets unknown layer '" + name + "'");
        const int total = static_cast<int>(sel.keep.size() + sel.prune.size());
        if (total != layer->n)
            throw Error(ErrorCode::InvalidCounts,
                        "selection for layer '" + name + "' covers " + std::to_string(total) +
                            " filters, layer has " + std::to_string(layer->n));
        if (sel.keep.empty())
            throw Error(ErrorCode::EmptyLayer, "selection would leave layer '" + name + "' empty");
    }

    PruningPlan plan;
    plan.method = method;
    plan.per_layer = selections;
    for (const auto& [name, sel] : selections) plan.p_by_layer[name] = sel.p;

    // Channel loss seen by each layer from its (unique) predecessor.
    std::map<std::string, int> channel_loss;
    for (const auto& layer : manifest.layers) {
        if (!layer.next_layer) continue;
        auto it = selections.find(layer.name);
        if (it == selections.end()) continue;
        const int pruned = static_cast<int>(it->second.prune.size());
        const LayerSpec* succ = manifest.find(*layer.next_layer);
        const int mult = (succ->kind == LayerKind::FullyConnected && layer.flatten_factor)
                             ? *layer.flatten_factor
                             : 1;
        channel_loss[*layer.next_layer] = pruned * mult;
    }

    for (const auto& layer : manifest.layers) {
        plan.before += layer_cost(layer, layer.c, layer.n);
        const auto sel = selections.find(layer.name);
        const int active_filters =
            sel == selections.end() ? layer.n : static_cast<int>(sel->second.keep.size());
        const auto loss = channel_loss.find(layer.name);
        const int active_in = layer.c - (loss == channel_loss.end() ? 0 : loss->second);
        plan.after += layer_cost(layer, active_in, active_filters);
    }
    return plan;
}

} // namespace centprune
