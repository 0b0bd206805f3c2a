#pragma once

#include <optional>
#include <string>
#include <vector>

#include "centprune/tensor.hpp"

namespace centprune {

enum class LayerKind { Conv, FullyConnected };

struct LayerSpec {
    std::string name;
    LayerKind kind = LayerKind::Conv;
    int n = 0;         // filters (conv) or output units (fully connected)
    int kernel_h = 0;
    int kernel_w = 0;
    int c = 0;         // input channels (conv) or input features (fully connected)
    int out_h = 0;
    int out_w = 0;
    bool has_bias = false;
    std::string weights_path;
    std::optional<std::string> next_layer;
    std::optional<int> flatten_factor; // spatial multiplier when the successor is fully connected
};

struct ModelManifest {
    std::vector<LayerSpec> layers;

    const LayerSpec* find(const std::string& name) const;
    int index_of(const std::string& name) const; // -1 when absent
};

// Parses and validates a manifest document. Weight paths are resolved against
// base_dir; each referenced file must exist and parse, and conv tensors must
// match the declared (n, kernel_h, kernel_w, c) shape.
ModelManifest load_manifest(const std::string& text, const std::string& base_dir = ".");

// Loads one conv layer's weights as a FilterSet.
FilterSet load_layer_filters(const LayerSpec& layer, const std::string& base_dir = ".");

} // namespace centprune
