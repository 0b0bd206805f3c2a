#include "centprune/manifest.hpp"

#include <filesystem>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "centprune/error.hpp"
#include "centprune/npy.hpp"

namespace centprune {

namespace {

using nlohmann::json;

int require_positive_int(const json& obj, const char* key, const std::string& layer) {
    if (!obj.contains(key) || !obj[key].is_number_integer())
        throw Error(ErrorCode::SchemaError, "layer '" + layer + "': '" + key + "' must be an integer");
    long long v = obj[key].get<long long>();
    if (v < 1) throw Error(ErrorCode::SchemaError, "layer '" + layer + "': '" + key + "' must be >= 1");
    return static_cast<int>(v);
}

LayerSpec parse_layer(const json& obj) {
    if (!obj.is_object()) throw Error(ErrorCode::SchemaError, "layer entry must be an object");
    if (!obj.contains("name") || !obj["name"].is_string())
        throw Error(ErrorCode::SchemaError, "layer 'name' must be a string");
    LayerSpec layer;
    layer.name = obj["name"].get<std::string>();

    if (!obj.contains("kind") || !obj["kind"].is_string())
        throw Error(ErrorCode::SchemaError, "layer '" + layer.name + "': 'kind' must be a string");
    const std::string kind = obj["kind"].get<std::string>();
    if (kind == "conv")
        layer.kind = LayerKind::Conv;
    else if (kind == "fully_connected")
        layer.kind = LayerKind::FullyConnected;
    else
        throw Error(ErrorCode::SchemaError,
                    "layer '" + layer.name + "': kind '" + kind + "' is not conv|fully_connected");

    layer.n = require_positive_int(obj, "n", layer.name);
    layer.kernel_h = require_positive_int(obj, "kernel_h", layer.name);
    layer.kernel_w = require_positive_int(obj, "kernel_w", layer.name);
    layer.c = require_positive_int(obj, "c", layer.name);
    layer.out_h = require_positive_int(obj, "out_h", layer.name);
    layer.out_w = require_positive_int(obj, "out_w", layer.name);

    if (!obj.contains("has_bias") || !obj["has_bias"].is_boolean())
        throw Error(ErrorCode::SchemaError, "layer '" + layer.name + "': 'has_bias' must be a boolean");
    layer.has_bias = obj["has_bias"].get<bool>();

    if (!obj.contains("weights_path") || !obj["weights_path"].is_string())
        throw Error(ErrorCode::SchemaError, "layer '" + layer.name + "': 'weights_path' must be a string");
    layer.weights_path = obj["weights_path"].get<std::string>();

    if (obj.contains("next_layer") && !obj["next_layer"].is_null()) {
        if (!obj["next_layer"].is_string())
            throw Error(ErrorCode::SchemaError, "layer '" + layer.name + "': 'next_layer' must be a string or null");
        layer.next_layer = obj["next_layer"].get<std::string>();
    }
    if (obj.contains("flatten_factor") && !obj["flatten_factor"].is_null()) {
        if (!obj["flatten_factor"].is_number_integer())
            throw Error(ErrorCode::SchemaError, "layer '" + layer.name + "': 'flatten_factor' must be an integer or null");
        long long ff = obj["flatten_factor"].get<long long>();
        if (ff < 1)
            throw Error(ErrorCode::SchemaError, "layer '" + layer.name + "': 'flatten_factor' must be >= 1");
        layer.flatten_factor = static_cast<int>(ff);
    }
    return layer;
}

} // namespace

const LayerSpec* ModelManifest::find(const std::string& name) const {
    for (const auto& layer : layers)
        if (layer.name == name) return &layer;
    return nullptr;
}

int ModelManifest::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < layers.size(); ++i)
        if (layers[i].name == name) return static_cast<int>(i);
    return -1;
}

ModelManifest load_manifest(const std::string& text, const std::string& base_dir) {
    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) throw Error(ErrorCode::SchemaError, "manifest is not valid JSON");
    if (!doc.is_object() || !doc.contains("layers") || !doc["layers"].is_array())
        throw Error(ErrorCode::SchemaError, "manifest must be an object with a 'layers' array");

    ModelManifest manifest;
    for (const auto& entry : doc["layers"]) manifest.layers.push_back(parse_layer(entry));

    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < manifest.layers.size(); ++i) {
        const auto& name = manifest.layers[i].name;
        if (!index.emplace(name, static_cast<int>(i)).second)
            throw Error(ErrorCode::SchemaError, "duplicate layer name '" + name + "'");
    }

    // Coupling links must form disjoint chains: no unknown targets, no two
    // layers feeding the same successor, no cycles.
    std::set<std::string> successors;
    for (const auto& layer : manifest.layers) {
        if (!layer.next_layer) continue;
        if (!index.count(*layer.next_layer))
            throw Error(ErrorCode::DanglingReference,
                        "layer '" + layer.name + "' links to unknown layer '" + *layer.next_layer + "'");
        if (!successors.insert(*layer.next_layer).second)
            throw Error(ErrorCode::SchemaError,
                        "layer '" + *layer.next_layer + "' has more than one predecessor");
    }
    for (const auto& layer : manifest.layers) {
        const LayerSpec* cursor = &layer;
        std::size_t steps = 0;
        while (cursor->next_layer) {
            cursor = &manifest.layers[index.at(*cursor->next_layer)];
            if (++steps > manifest.layers.size())
                throw Error(ErrorCode::SchemaError, "coupling links form a cycle through '" + layer.name + "'");
        }
    }

    for (const auto& layer : manifest.layers) {
        const auto path = std::filesystem::path(base_dir) / layer.weights_path;
        if (!std::filesystem::exists(path))
            throw Error(ErrorCode::MissingFile, "weights file '" + path.string() + "' does not exist");
        Tensor t = parse_npy_file(path.string());
        if (layer.kind == LayerKind::Conv) {
            const std::vector<std::size_t> want = {
                static_cast<std::size_t>(layer.n), static_cast<std::size_t>(layer.kernel_h),
                static_cast<std::size_t>(layer.kernel_w), static_cast<std::size_t>(layer.c)};
            if (t.shape != want)
                throw Error(ErrorCode::ShapeConflict,
                            "layer '" + layer.name + "': weights shape does not match declared (n, kernel_h, kernel_w, c)");
        }
    }
    return manifest;
}

FilterSet load_layer_filters(const LayerSpec& layer, const std::string& base_dir) {
    if (layer.kind != LayerKind::Conv)
        throw Error(ErrorCode::InvalidCounts, "layer '" + layer.name + "' is not a conv layer");
    const auto path = std::filesystem::path(base_dir) / layer.weights_path;
    Tensor t = parse_npy_file(path.string());
    const std::vector<std::size_t> want = {
        static_cast<std::size_t>(layer.n), static_cast<std::size_t>(layer.kernel_h),
        static_cast<std::size_t>(layer.kernel_w), static_cast<std::size_t>(layer.c)};
    if (t.shape != want)
        throw Error(ErrorCode::ShapeConflict,
                    "layer '" + layer.name + "': weights shape does not match declared (n, kernel_h, kernel_w, c)");
    FilterSet fs;
    fs.n = layer.n;
    fs.kh = layer.kernel_h;
    fs.kw = layer.kernel_w;
    fs.c = layer.c;
    fs.data = std::move(t.data);
    return fs;
}

} // namespace centprune
