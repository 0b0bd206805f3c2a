#include "centprune/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "centprune/baselines.hpp"
#include "centprune/error.hpp"
#include "centprune/sha256.hpp"

namespace centprune {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::MissingFile, "cannot open '" + path + "'");
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

struct LoadedManifest {
    ModelManifest manifest;
    std::string digest;
    std::string base_dir;
};

LoadedManifest load(const std::string& manifest_path) {
    const std::string text = read_file(manifest_path);
    LoadedManifest lm;
    lm.digest = sha256_hex(text);
    lm.base_dir = std::filesystem::path(manifest_path).parent_path().string();
    if (lm.base_dir.empty()) lm.base_dir = ".";
    lm.manifest = load_manifest(text, lm.base_dir);
    return lm;
}

// Layers a scoring run targets: the requested names (validated as prunable
// conv layers) or every conv layer when none were named.
std::vector<std::string> resolve_layers(const ModelManifest& manifest,
                                        const std::vector<std::string>& requested) {
    std::vector<std::string> out;
    if (requested.empty()) {
        for (const auto& layer : manifest.layers)
            if (layer.kind == LayerKind::Conv) out.push_back(layer.name);
        return out;
    }
    for (const auto& name : requested) {
        const LayerSpec* layer = manifest.find(name);
        if (!layer) throw Error(ErrorCode::UnknownLayer, "layer '" + name + "' not in manifest");
        if (layer->kind != LayerKind::Conv)
            throw Error(ErrorCode::InvalidCounts, "layer '" + name + "' not prunable (not conv)");
        out.push_back(name);
    }
    return out;
}

LayerBlock to_block(const LayerRun& run, bool emit_scores, bool with_objective) {
    LayerBlock block;
    block.layer = run.layer;
    block.n = run.n;
    block.p = run.p;
    if (emit_scores && run.scores) block.scores = run.scores;
    block.keep = run.sel.keep;
    block.prune = run.sel.prune;
    block.trace = run.trace;
    if (with_objective) block.objective = run.objective;
    return block;
}

} // namespace

LayerRun run_method(Method method, const LayerSpec& spec, const FilterSet& filters, double p) {
    LayerRun run;
    run.layer = spec.name;
    run.n = filters.n;
    run.p = p;

    SimilarityMatrix w;
    const bool needs_similarity = method == Method::Wdc || method == Method::Bc || method == Method::Cs;
    if (needs_similarity) w = similarity_matrix(make_representatives(filters));

    switch (method) {
        case Method::Wdc: {
            ScoreVector s = wdc_scores(w);
            run.sel = rank_filters(s, p);
            run.scores = std::move(s.scores);
            break;
        }
        case Method::Bc: {
            ScoreVector s = bc_scores(to_distance(w));
            run.sel = rank_filters(s, p);
            run.scores = std::move(s.scores);
            break;
        }
        case Method::L1: {
            ScoreVector s = l1_scores(filters);
            run.sel = rank_filters(s, p);
            run.scores = std::move(s.scores);
            break;
        }
        case Method::Gm: {
            ScoreVector s = gm_scores(filters);
            run.sel = rank_filters(s, p);
            run.scores = std::move(s.scores);
            break;
        }
        case Method::Cs: {
            std::vector<int> trace;
            run.sel = cs_prune(w, l1_norms(filters), p, &trace);
            run.trace = std::move(trace);
            break;
        }
        case Method::Oracle:
            throw Error(ErrorCode::InvalidCounts, "oracle is not a scoring method; use the oracle command");
    }
    if (needs_similarity) run.objective = subset_objective(w, run.sel.keep);
    return run;
}

ScoreReport run_score(const ScoreRequest& request) {
    LoadedManifest lm = load(request.manifest_path);

    std::vector<std::string> targets;
    std::map<std::string, double> ratios;
    if (!request.ratio_per_layer.empty()) {
        for (const auto& [name, ratio] : request.ratio_per_layer) targets.push_back(name);
        targets = resolve_layers(lm.manifest, targets);
        ratios = request.ratio_per_layer;
    } else {
        if (!request.ratio)
            throw Error(ErrorCode::InvalidRatio, "no pruning ratio given");
        targets = resolve_layers(lm.manifest, request.layers);
        for (const auto& name : targets) ratios[name] = *request.ratio;
    }

    ScoreReport report;
    report.manifest_digest = lm.digest;
    report.method = request.method;

    std::map<std::string, PruneSelection> selections;
    // Manifest order keeps the report stable no matter how targets were given.
    for (const auto& layer : lm.manifest.layers) {
        if (std::find(targets.begin(), targets.end(), layer.name) == targets.end()) continue;
        const FilterSet filters = load_layer_filters(layer, lm.base_dir);
        LayerRun run = run_method(request.method, layer, filters, ratios.at(layer.name));
        selections[layer.name] = run.sel;
        report.layers.push_back(to_block(run, request.emit_scores, false));
    }
    report.plan = build_plan(lm.manifest, selections, request.method);
    return report;
}

OracleReport run_oracle(const OracleRequest& request) {
    LoadedManifest lm = load(request.manifest_path);
    const LayerSpec* layer = lm.manifest.find(request.layer);
    if (!layer) throw Error(ErrorCode::UnknownLayer, "layer '" + request.layer + "' not in manifest");
    if (layer->kind != LayerKind::Conv)
        throw Error(ErrorCode::InvalidCounts, "layer '" + request.layer + "' not prunable (not conv)");

    const FilterSet filters = load_layer_filters(*layer, lm.base_dir);
    const SimilarityMatrix w = similarity_matrix(make_representatives(filters));

    OracleReport report;
    report.manifest_digest = lm.digest;
    report.layer = layer->name;
    report.n = filters.n;
    report.p = request.ratio;
    report.limit = request.limit;
    report.oracle = optimal_subset(w, request.ratio, request.limit);

    const PruneSelection wdc = rank_filters(wdc_scores(w), request.ratio);
    report.wdc_keep = wdc.keep;
    report.wdc_objective = subset_objective(w, wdc.keep);
    const PruneSelection bc = rank_filters(bc_scores(to_distance(w)), request.ratio);
    report.bc_keep = bc.keep;
    report.bc_objective = subset_objective(w, bc.keep);
    return report;
}

CompareReport run_compare(const CompareRequest& request) {
    LoadedManifest lm = load(request.manifest_path);
    const std::vector<std::string> targets = resolve_layers(lm.manifest, request.layers);

    CompareReport report;
    report.manifest_digest = lm.digest;
    report.ratio = request.ratio;

    // Load and preprocess each target layer once, then score per method.
    struct Prepared {
        const LayerSpec* spec;
        FilterSet filters;
        SimilarityMatrix w;
    };
    std::vector<Prepared> prepared;
    for (const auto& layer : lm.manifest.layers) {
        if (std::find(targets.begin(), targets.end(), layer.name) == targets.end()) continue;
        Prepared prep;
        prep.spec = &layer;
        prep.filters = load_layer_filters(layer, lm.base_dir);
        prep.w = similarity_matrix(make_representatives(prep.filters));
        prepared.push_back(std::move(prep));
    }

    for (Method method : request.methods) {
        CompareEntry entry;
        entry.method = method;
        std::map<std::string, PruneSelection> selections;
        for (const auto& prep : prepared) {
            LayerRun run;
            run.layer = prep.spec->name;
            run.n = prep.filters.n;
            run.p = request.ratio;
            switch (method) {
                case Method::Wdc: run.sel = rank_filters(wdc_scores(prep.w), request.ratio); break;
                case Method::Bc:
                    run.sel = rank_filters(bc_scores(to_distance(prep.w)), request.ratio);
                    break;
                case Method::L1: run.sel = rank_filters(l1_scores(prep.filters), request.ratio); break;
                case Method::Gm: run.sel = rank_filters(gm_scores(prep.filters), request.ratio); break;
                case Method::Cs: {
                    std::vector<int> trace;
                    run.sel = cs_prune(prep.w, l1_norms(prep.filters), request.ratio, &trace);
                    run.trace = std::move(trace);
                    break;
                }
                case Method::Oracle:
                    throw Error(ErrorCode::InvalidCounts, "oracle does not take part in compare");
            }
            run.objective = subset_objective(prep.w, run.sel.keep);
            selections[prep.spec->name] = run.sel;
            entry.layers.push_back(to_block(run, false, true));
        }
        entry.plan = build_plan(lm.manifest, selections, method);
        report.methods.push_back(std::move(entry));
    }
    return report;
}

} // namespace centprune
