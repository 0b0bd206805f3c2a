#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "centprune/oracle.hpp"
#include "centprune/planner.hpp"

namespace centprune {

inline constexpr const char* kToolVersion = "0.1.0";

// Hand-rolled JSON emitter so reports are byte-stable: keys keep insertion
// order, doubles print with up to 17 significant digits, non-finite values
// become null.
class JsonWriter {
  public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(std::string_view k);
    JsonWriter& value(std::string_view s);
    JsonWriter& value_int(std::int64_t v);
    JsonWriter& value_uint(std::uint64_t v);
    JsonWriter& value_double(double v);
    JsonWriter& value_null();
    const std::string& str() const { return out_; }

  private:
    void pre_item();
    std::string out_;
    std::vector<std::uint32_t> counts_;
    bool after_key_ = false;
};

struct LayerBlock {
    std::string layer;
    int n = 0;
    double p = 0.0;
    std::optional<std::vector<double>> scores;
    std::vector<int> keep;
    std::vector<int> prune;
    std::optional<std::vector<int>> trace;      // cs greedy order
    std::optional<double> objective;            // retained-similarity objective of keep
};

struct ScoreReport {
    std::string manifest_digest;
    Method method = Method::Wdc;
    std::vector<LayerBlock> layers;
    PruningPlan plan;
};

struct OracleReport {
    std::string manifest_digest;
    std::string layer;
    int n = 0;
    double p = 0.0;
    int limit = 0;
    OracleResult oracle;
    std::vector<int> wdc_keep;
    double wdc_objective = 0.0;
    std::vector<int> bc_keep;
    double bc_objective = 0.0;
};

struct CompareEntry {
    Method method = Method::Wdc;
    std::vector<LayerBlock> layers;
    PruningPlan plan;
};

struct CompareReport {
    std::string manifest_digest;
    double ratio = 0.0;
    std::vector<CompareEntry> methods;
};

std::string render_score_report(const ScoreReport& report);
std::string render_oracle_report(const OracleReport& report);
std::string render_compare_report(const CompareReport& report);

// Reduction percentage, 100 * (1 - after/before), rounded to 2 decimals.
double reduction_pct(std::uint64_t before, std::uint64_t after);

// Writes via a temp file in the same directory plus rename.
void write_text_atomic(const std::string& path, const std::string& content);

} // namespace centprune
