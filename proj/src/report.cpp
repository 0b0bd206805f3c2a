#include "centprune/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "centprune/error.hpp"

namespace centprune {

namespace {

void append_escaped(std::string& out, std::string_view s) {
    out += '"';
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
}

} // namespace

void JsonWriter::pre_item() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (!counts_.empty() && counts_.back() > 0) out_ += ',';
    if (!counts_.empty()) ++counts_.back();
}

JsonWriter& JsonWriter::begin_object() {
    pre_item();
    out_ += '{';
    counts_.push_back(0);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    counts_.pop_back();
    out_ += '}';
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    pre_item();
    out_ += '[';
    counts_.push_back(0);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    counts_.pop_back();
    out_ += ']';
    return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
    if (counts_.back() > 0) out_ += ',';
    ++counts_.back();
    append_escaped(out_, k);
    out_ += ':';
    after_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(std::string_view s) {
    pre_item();
    append_escaped(out_, s);
    return *this;
}

JsonWriter& JsonWriter::value_int(std::int64_t v) {
    pre_item();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value_uint(std::uint64_t v) {
    pre_item();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value_double(double v) {
    pre_item();
    if (!std::isfinite(v)) {
        out_ += "null";
        return *this;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out_ += buf;
    return *this;
}

JsonWriter& JsonWriter::value_null() {
    pre_item();
    out_ += "null";
    return *this;
}

namespace {

void emit_int_array(JsonWriter& w, const std::vector<int>& values) {
    w.begin_array();
    for (int v : values) w.value_int(v);
    w.end_array();
}

void emit_layer_block(JsonWriter& w, const LayerBlock& block) {
    w.begin_object();
    w.key("layer").value(block.layer);
    w.key("n").value_int(block.n);
    w.key("p").value_double(block.p);
    if (block.scores) {
        w.key("scores").begin_array();
        for (double s : *block.scores) w.value_double(s);
        w.end_array();
    }
    w.key("keep");
    emit_int_array(w, block.keep);
    w.key("prune");
    emit_int_array(w, block.prune);
    if (block.trace) {
        w.key("trace");
        emit_int_array(w, *block.trace);
    }
    if (block.objective) w.key("objective").value_double(*block.objective);
    w.end_object();
}

void emit_cost(JsonWriter& w, const PruningPlan& plan) {
    w.key("cost").begin_object();
    w.key("before").begin_object();
    w.key("params").value_uint(plan.before.params);
    w.key("macs").value_uint(plan.before.macs);
    w.end_object();
    w.key("after").begin_object();
    w.key("params").value_uint(plan.after.params);
    w.key("macs").value_uint(plan.after.macs);
    w.end_object();
    w.key("params_reduction_pct").value_double(reduction_pct(plan.before.params, plan.after.params));
    w.key("macs_reduction_pct").value_double(reduction_pct(plan.before.macs, plan.after.macs));
    w.end_object();
}

} // namespace

double reduction_pct(std::uint64_t before, std::uint64_t after) {
    if (before == 0) return 0.0;
    const double pct = 100.0 * (1.0 - static_cast<double>(after) / static_cast<double>(before));
    return std::round(pct * 100.0) / 100.0;
}

std::string render_score_report(const ScoreReport& report) {
    JsonWriter w;
    w.begin_object();
    w.key("tool_version").value(kToolVersion);
    w.key("manifest_digest").value(report.manifest_digest);
    w.key("method").value(method_name(report.method));
    w.key("layers").begin_array();
    for (const auto& block : report.layers) emit_layer_block(w, block);
    w.end_array();
    emit_cost(w, report.plan);
    w.end_object();
    return w.str() + "\n";
}

std::string render_oracle_report(const OracleReport& report) {
    JsonWriter w;
    w.begin_object();
    w.key("tool_version").value(kToolVersion);
    w.key("manifest_digest").value(report.manifest_digest);
    w.key("method").value("oracle");
    w.key("layer").value(report.layer);
    w.key("n").value_int(report.n);
    w.key("p").value_double(report.p);
    w.key("limit").value_int(report.limit);
    w.key("oracle").begin_object();
    w.key("keep");
    emit_int_array(w, report.oracle.keep);
    w.key("objective").value_double(report.oracle.objective);
    w.key("subsets_examined").value_uint(report.oracle.subsets_examined);
    w.end_object();
    w.key("wdc").begin_object();
    w.key("keep");
    emit_int_array(w, report.wdc_keep);
    w.key("objective").value_double(report.wdc_objective);
    w.end_object();
    w.key("bc").begin_object();
    w.key("keep");
    emit_int_array(w, report.bc_keep);
    w.key("objective").value_double(report.bc_objective);
    w.end_object();
    w.end_object();
    return w.str() + "\n";
}

std::string render_compare_report(const CompareReport& report) {
    JsonWriter w;
    w.begin_object();
    w.key("tool_version").value(kToolVersion);
    w.key("manifest_digest").value(report.manifest_digest);
    w.key("ratio").value_double(report.ratio);
    w.key("methods").begin_array();
    for (const auto& entry : report.methods) {
        w.begin_object();
        w.key("method").value(method_name(entry.method));
        w.key("layers").begin_array();
        for (const auto& block : entry.layers) emit_layer_block(w, block);
        w.end_array();
        emit_cost(w, entry.plan);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str() + "\n";
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::MissingFile, "cannot write '" + tmp + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error(ErrorCode::MissingFile, "short write to '" + tmp + "'");
    }
    std::filesystem::rename(tmp, path);
}

} // namespace centprune
