#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "centprune/error.hpp"
#include "centprune/pipeline.hpp"

namespace {

using namespace centprune;

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

// "layerA=0.25,layerB=0.5" -> ordered (layer, ratio) pairs.
std::map<std::string, double> parse_ratio_per_layer(const std::string& s) {
    std::map<std::string, double> out;
    for (const auto& part : split_csv(s)) {
        const auto eq = part.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == part.size())
            throw CLI::ValidationError("--ratio-per-layer", "expected name=ratio, got '" + part + "'");
        const std::string name = part.substr(0, eq);
        double ratio = 0.0;
        try {
            std::size_t used = 0;
            ratio = std::stod(part.substr(eq + 1), &used);
            if (used != part.size() - eq - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw CLI::ValidationError("--ratio-per-layer", "bad ratio in '" + part + "'");
        }
        out[name] = ratio;
    }
    if (out.empty()) throw CLI::ValidationError("--ratio-per-layer", "no layer ratios given");
    return out;
}

void emit(const std::string& rendered, const std::string& out_path) {
    if (out_path.empty())
        std::cout << rendered;
    else
        write_text_atomic(out_path, rendered);
}

void set_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Filter pruning planner driven by graph centrality over filter similarity"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "OpenMP thread count (0 = library default)");

    auto* score = app.add_subcommand("score", "Score one or more conv layers and emit a pruning plan");
    score->fallthrough();
    std::string score_manifest, score_method = "wdc", score_layers, score_rpl, score_out;
    double score_ratio = -1.0;
    bool emit_scores = false;
    score->add_option("manifest", score_manifest, "manifest JSON path")->required();
    score->add_option("--method", score_method, "wdc|bc|l1|gm|cs")
        ->check(CLI::IsMember({"wdc", "bc", "l1", "gm", "cs"}));
    score->add_option("--layers", score_layers, "comma-separated conv layers (default: all)");
    auto* ratio_source = score->add_option_group("ratio", "exactly one ratio source");
    auto* ratio_opt =
        ratio_source->add_option("--ratio", score_ratio, "pruning ratio in [0,1] for all layers");
    auto* rpl_opt = ratio_source->add_option("--ratio-per-layer", score_rpl,
                                             "per-layer ratios, e.g. C1=0.25,C2=0.5");
    ratio_source->require_option(1);
    rpl_opt->excludes(score->get_option("--layers"));
    score->add_flag("--emit-scores", emit_scores, "include per-filter scores in the report");
    score->add_option("--out", score_out, "report path (default: stdout)");

    auto* oracle = app.add_subcommand("oracle", "Exhaustive optimal keep set for one small layer");
    oracle->fallthrough();
    std::string oracle_manifest, oracle_layer, oracle_out;
    double oracle_ratio = 0.0;
    int oracle_limit = 20;
    oracle->add_option("manifest", oracle_manifest, "manifest JSON path")->required();
    oracle->add_option("--layer", oracle_layer, "conv layer to solve")->required();
    oracle->add_option("--ratio", oracle_ratio, "pruning ratio in [0,1]")->required();
    oracle->add_option("--limit", oracle_limit, "refuse layers with more filters than this");
    oracle->add_option("--out", oracle_out, "report path (default: stdout)");

    auto* compare = app.add_subcommand("compare", "Run several methods side by side");
    compare->fallthrough();
    std::string compare_manifest, compare_methods = "wdc,bc,l1,gm,cs", compare_layers, compare_out;
    double compare_ratio = 0.0;
    compare->add_option("manifest", compare_manifest, "manifest JSON path")->required();
    compare->add_option("--ratio", compare_ratio, "pruning ratio in [0,1]")->required();
    compare->add_option("--methods", compare_methods, "comma-separated method list, order kept");
    compare->add_option("--layers", compare_layers, "comma-separated conv layers (default: all)");
    compare->add_option("--out", compare_out, "report path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    set_threads(threads);

    try {
        if (score->parsed()) {
            ScoreRequest request;
            request.manifest_path = score_manifest;
            request.method = method_from_name(score_method);
            request.layers = split_csv(score_layers);
            if (!score_rpl.empty())
                request.ratio_per_layer = parse_ratio_per_layer(score_rpl);
            else if (ratio_opt->count() > 0)
                request.ratio = score_ratio;
            request.emit_scores = emit_scores;
            emit(render_score_report(run_score(request)), score_out);
        } else if (oracle->parsed()) {
            OracleRequest request;
            request.manifest_path = oracle_manifest;
            request.layer = oracle_layer;
            request.ratio = oracle_ratio;
            request.limit = oracle_limit;
            emit(render_oracle_report(run_oracle(request)), oracle_out);
        } else if (compare->parsed()) {
            CompareRequest request;
            request.manifest_path = compare_manifest;
            request.ratio = compare_ratio;
            request.layers = split_csv(compare_layers);
            for (const auto& name : split_csv(compare_methods)) {
                const Method m = method_from_name(name);
                if (m == Method::Oracle)
                    throw Error(ErrorCode::InvalidCounts, "oracle is a separate command");
                request.methods.push_back(m);
            }
            if (request.methods.empty())
                throw Error(ErrorCode::InvalidCounts, "no methods given");
            emit(render_compare_report(run_compare(request)), compare_out);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
