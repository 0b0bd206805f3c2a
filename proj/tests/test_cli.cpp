#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "centprune/sha256.hpp"
#include "support/helpers.hpp"

using namespace centprune;
using namespace testsupport;
using nlohmann::json;

namespace {

// 1x2x1 filters whose representatives are (cos a, sin a); pairwise similarity
// is then |cos(a_i - a_j)| exactly, which makes hand arithmetic easy.
FilterSet angle_filters(const std::vector<double>& degrees, double norm = 1.0) {
    std::vector<double> data;
    for (double deg : degrees) {
        const double rad = deg * std::numbers::pi / 180.0;
        data.push_back(norm * std::cos(rad));
        data.push_back(norm * std::sin(rad));
    }
    return make_filterset(static_cast<int>(degrees.size()), 1, 2, 1, data);
}

std::string two_layer_manifest(const TempDir& dir) {
    const FilterSet fs = angle_filters({0.0, 20.0, 40.0, 85.0});
    Tensor conv = make_tensor({4, 1, 2, 1}, fs.data);
    write_npy_file(dir.file("conv.npy"), conv);
    Tensor fc = make_tensor({10, 16}, std::vector<double>(160, 0.25));
    write_npy_file(dir.file("fc.npy"), fc);

    const std::string manifest =
        "{\"layers\":["
        "{\"name\":\"C1\",\"kind\":\"conv\",\"n\":4,\"kernel_h\":1,\"kernel_w\":2,\"c\":1,"
        "\"out_h\":8,\"out_w\":8,\"has_bias\":true,\"weights_path\":\"conv.npy\","
        "\"next_layer\":\"FC\",\"flatten_factor\":4},"
        "{\"name\":\"FC\",\"kind\":\"fully_connected\",\"n\":10,\"kernel_h\":1,\"kernel_w\":1,"
        "\"c\":16,\"out_h\":1,\"out_w\":1,\"has_bias\":true,\"weights_path\":\"fc.npy\","
        "\"next_layer\":null,\"flatten_factor\":null}]}";
    write_file(dir.file("model.json"), manifest);
    return dir.file("model.json");
}

} // namespace

TEST_CASE("score surfaces the keep budget end to end") {
    TempDir dir;
    const std::string manifest =
        write_single_layer_model(dir, random_filterset(16, 3, 3, 2, 321));
    const CliResult r = run_cli("score " + manifest + " --method wdc --ratio 0.25");
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.output);
    CHECK(report["method"] == "wdc");
    CHECK(report["layers"][0]["n"] == 16);
    CHECK(report["layers"][0]["keep"].size() == 12);
    CHECK(report["layers"][0]["prune"].size() == 4);
    CHECK(report["manifest_digest"] == sha256_hex(read_file(manifest)));
    // Scores stay out of the report unless asked for.
    CHECK(!report["layers"][0].contains("scores"));
}

TEST_CASE("score with bc prunes the bridge filter of the detour triangle") {
    TempDir dir;
    const std::string manifest = write_single_layer_model(dir, angle_filters({0.0, 20.0, 40.0}));
    const CliResult r = run_cli("score " + manifest + " --method bc --ratio 0.34 --emit-scores");
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.output);
    CHECK(report["layers"][0]["prune"] == json::array({1}));
    CHECK(report["layers"][0]["scores"][1] == 1.0);
    CHECK(report["layers"][0]["scores"][0] == 0.0);
}

TEST_CASE("score rejects fully connected layers") {
    TempDir dir;
    const std::string manifest = two_layer_manifest(dir);
    const CliResult r = run_cli("score " + manifest + " --method wdc --ratio 0.25 --layers FC");
    CHECK(r.exit_code == 1);
}

TEST_CASE("score accepts per-layer ratios") {
    TempDir dir;
    const std::string manifest = two_layer_manifest(dir);
    const CliResult r = run_cli("score " + manifest + " --method wdc --ratio-per-layer C1=0.5");
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.output);
    CHECK(report["layers"][0]["p"] == 0.5);
    CHECK(report["layers"][0]["keep"].size() == 2);
    // The fc successor feels the channel loss: 16 - 2*4 = 8 input features.
    CHECK(report["cost"]["after"]["params"] == json(2 * 2 + 2 + 8 * 10 + 10));
}

TEST_CASE("score takes distinct ratios for distinct layers") {
    TempDir dir;
    const FilterSet c1 = random_filterset(8, 3, 3, 1, 111);
    const FilterSet c2 = random_filterset(6, 3, 3, 8, 222);
    write_npy_file(dir.file("c1.npy"), make_tensor({8, 3, 3, 1}, c1.data));
    write_npy_file(dir.file("c2.npy"), make_tensor({6, 3, 3, 8}, c2.data));
    write_file(dir.file("model.json"),
               "{\"layers\":["
               "{\"name\":\"C1\",\"kind\":\"conv\",\"n\":8,\"kernel_h\":3,\"kernel_w\":3,\"c\":1,"
               "\"out_h\":8,\"out_w\":8,\"has_bias\":true,\"weights_path\":\"c1.npy\","
               "\"next_layer\":\"C2\",\"flatten_factor\":null},"
               "{\"name\":\"C2\",\"kind\":\"conv\",\"n\":6,\"kernel_h\":3,\"kernel_w\":3,\"c\":8,"
               "\"out_h\":4,\"out_w\":4,\"has_bias\":false,\"weights_path\":\"c2.npy\","
               "\"next_layer\":null,\"flatten_factor\":null}]}");

    const CliResult r = run_cli("score " + dir.file("model.json") +
                                " --method gm --ratio-per-layer C1=0.25,C2=0.5");
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.output);
    REQUIRE(report["layers"].size() == 2);
    CHECK(report["layers"][0]["layer"] == "C1");
    CHECK(report["layers"][0]["p"] == 0.25);
    CHECK(report["layers"][0]["keep"].size() == 6);
    CHECK(report["layers"][1]["layer"] == "C2");
    CHECK(report["layers"][1]["p"] == 0.5);
    CHECK(report["layers"][1]["keep"].size() == 3);
    // C2 after: 3 filters, input channels 8 - 2 pruned upstream.
    const int c2_after = 3 * 9 * 6;
    const int c1_after = 6 * 9 * 1 + 6;
    CHECK(report["cost"]["after"]["params"] == json(c1_after + c2_after));
}

TEST_CASE("score applies channel coupling in the cost summary") {
    TempDir dir;
    const std::string manifest = two_layer_manifest(dir);
    const CliResult r = run_cli("score " + manifest + " --method l1 --ratio 0");
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.output);
    CHECK(report["cost"]["before"] == report["cost"]["after"]);
    CHECK(report["cost"]["params_reduction_pct"] == 0.0);
}

TEST_CASE("oracle report matches hand enumeration") {
    TempDir dir;
    const std::vector<double> degrees = {0.0, 80.0, 40.0, 42.0};
    const std::string manifest = write_single_layer_model(dir, angle_filters(degrees));
    const CliResult r = run_cli("oracle " + manifest + " --layer C1 --ratio 0.25");
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.output);

    // Enumerate the four keep-3 subsets on the analytic similarities.
    auto sim = [&](int i, int j) {
        return std::abs(std::cos((degrees[i] - degrees[j]) * std::numbers::pi / 180.0));
    };
    double best = 1e18;
    std::vector<int> best_keep;
    for (int skip = 0; skip < 4; ++skip) {
        std::vector<int> keep;
        for (int i = 0; i < 4; ++i)
            if (i != skip) keep.push_back(i);
        double obj = 0.0;
        for (std::size_t a = 0; a < keep.size(); ++a)
            for (std::size_t b = a + 1; b < keep.size(); ++b) obj += sim(keep[a], keep[b]);
        if (obj < best) {
            best = obj;
            best_keep = keep;
        }
    }
    CHECK(report["oracle"]["keep"] == json(best_keep));
    CHECK(std::abs(report["oracle"]["objective"].get<double>() - best) < 1e-9);
    CHECK(report["oracle"]["subsets_examined"] == 4);
    CHECK(report["wdc"].contains("objective"));
    CHECK(report["bc"].contains("keep"));
}

TEST_CASE("oracle with p=0 reports the full retained similarity") {
    TempDir dir;
    const std::vector<double> degrees = {0.0, 30.0, 75.0};
    const std::string manifest = write_single_layer_model(dir, angle_filters(degrees));
    const CliResult r = run_cli("oracle " + manifest + " --layer C1 --ratio 0");
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.output);
    auto sim = [&](int i, int j) {
        return std::abs(std::cos((degrees[i] - degrees[j]) * std::numbers::pi / 180.0));
    };
    const double expected = sim(0, 1) + sim(0, 2) + sim(1, 2);
    CHECK(std::abs(report["oracle"]["objective"].get<double>() - expected) < 1e-9);
}

TEST_CASE("oracle refuses layers above the limit") {
    TempDir dir;
    const std::string manifest =
        write_single_layer_model(dir, random_filterset(32, 3, 3, 1, 654));
    const CliResult r = run_cli("oracle " + manifest + " --layer C1 --ratio 0.5");
    CHECK(r.exit_code == 1);
}

TEST_CASE("compare runs methods in the given order with equal budgets") {
    TempDir dir;
    const std::string manifest =
        write_single_layer_model(dir, random_filterset(12, 3, 3, 2, 987));
    const CliResult r = run_cli("compare " + manifest + " --ratio 0.5 --methods wdc,l1,cs");
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.output);
    REQUIRE(report["methods"].size() == 3);
    CHECK(report["methods"][0]["method"] == "wdc");
    CHECK(report["methods"][1]["method"] == "l1");
    CHECK(report["methods"][2]["method"] == "cs");
    for (const auto& entry : report["methods"]) {
        CHECK(entry["layers"][0]["keep"].size() == 6);
        CHECK(entry["layers"][0]["prune"].size() == 6);
        CHECK(entry["layers"][0].contains("objective"));
    }
    CHECK(report["methods"][2]["layers"][0]["trace"].size() == 6);
}

TEST_CASE("compare separates redundancy-aware and norm-based pruning") {
    // Four large-norm duplicates plus four diverse small-norm filters: wdc
    // prunes the duplicates, l1 prunes the small norms.
    TempDir dir;
    std::vector<double> data;
    for (int i = 0; i < 4; ++i) {
        data.push_back(5.0 * std::cos(std::numbers::pi / 4));
        data.push_back(5.0 * std::sin(std::numbers::pi / 4));
    }
    for (double deg : {0.0, 30.0, 60.0, 90.0}) {
        const double rad = deg * std::numbers::pi / 180.0;
        data.push_back(std::cos(rad));
        data.push_back(std::sin(rad));
    }
    const std::string manifest =
        write_single_layer_model(dir, make_filterset(8, 1, 2, 1, data));

    const CliResult r = run_cli("compare " + manifest + " --ratio 0.5 --methods wdc,l1");
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.output);
    CHECK(report["methods"][0]["layers"][0]["prune"] == json::array({0, 1, 2, 3}));
    CHECK(report["methods"][1]["layers"][0]["prune"] == json::array({4, 5, 6, 7}));
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    TempDir dir;
    FilterSet fs = random_filterset(24, 3, 3, 4, 1593);
    for (std::size_t k = 0; k < fs.filter_size(); ++k) fs.data[7 * fs.filter_size() + k] = 0.0;
    const std::string manifest = write_single_layer_model(dir, fs);

    const std::string out1 = dir.file("r1.json"), out2 = dir.file("r2.json"),
                      out4 = dir.file("r4.json");
    REQUIRE(run_cli("score " + manifest +
                    " --method bc --ratio 0.5 --emit-scores --threads 1 --out " + out1)
                .exit_code == 0);
    REQUIRE(run_cli("score " + manifest +
                    " --method bc --ratio 0.5 --emit-scores --threads 2 --out " + out2)
                .exit_code == 0);
    REQUIRE(run_cli("score " + manifest +
                    " --method bc --ratio 0.5 --emit-scores --threads 4 --out " + out4)
                .exit_code == 0);
    const std::string r1 = read_file(out1);
    CHECK(!r1.empty());
    CHECK(r1 == read_file(out2));
    CHECK(r1 == read_file(out4));

    const CliResult again =
        run_cli("score " + manifest + " --method bc --ratio 0.5 --emit-scores --threads 2");
    CHECK(again.output == r1);
}

TEST_CASE("zero filters surface as null scores and are pruned first") {
    TempDir dir;
    FilterSet fs = random_filterset(8, 2, 2, 2, 2222);
    for (std::size_t k = 0; k < fs.filter_size(); ++k) fs.data[3 * fs.filter_size() + k] = 0.0;
    const std::string manifest = write_single_layer_model(dir, fs);
    const CliResult r = run_cli("score " + manifest + " --method wdc --ratio 0.125 --emit-scores");
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.output);
    CHECK(report["layers"][0]["prune"] == json::array({3}));
    CHECK(report["layers"][0]["scores"][3].is_null());
}

TEST_CASE("flag misuse exits with code 2") {
    TempDir dir;
    const std::string manifest = write_single_layer_model(dir, random_filterset(4, 1, 2, 1, 1));
    CHECK(run_cli("score " + manifest + " --no-such-flag").exit_code == 2);
    CHECK(run_cli("score " + manifest).exit_code == 2); // no ratio source
    CHECK(run_cli("score " + manifest + " --ratio 0.5 --ratio-per-layer C1=0.5").exit_code == 2);
    CHECK(run_cli("score " + manifest + " --ratio-per-layer C1-is-not-a-pair").exit_code == 2);
    CHECK(run_cli("score " + manifest + " --method nope --ratio 0.5").exit_code == 2);
    CHECK(run_cli("prune-everything").exit_code == 2);
}

TEST_CASE("domain errors exit with code 1") {
    TempDir dir;
    const std::string manifest = write_single_layer_model(dir, random_filterset(4, 1, 2, 1, 2));
    CHECK(run_cli("score " + manifest + " --method wdc --ratio 1.5").exit_code == 1);
    CHECK(run_cli("score " + manifest + " --method wdc --ratio 0.5 --layers ghost").exit_code == 1);
    CHECK(run_cli("score " + dir.file("missing.json") + " --method wdc --ratio 0.5").exit_code == 1);

    // Corrupt weights file: still a typed failure, not a crash.
    write_file(dir.file("C1.npy"), "definitely not numpy");
    CHECK(run_cli("score " + manifest + " --method wdc --ratio 0.5").exit_code == 1);
}
