#include "support/helpers.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#ifndef CENTPRUNE_BIN_PATH
#error "CENTPRUNE_BIN_PATH must point at the CLI binary"
#endif

namespace testsupport {

using namespace centprune;

Tensor make_tensor(std::vector<std::size_t> shape, std::vector<double> data) {
    Tensor t;
    t.shape = std::move(shape);
    t.data = std::move(data);
    return t;
}

FilterSet make_filterset(int n, int kh, int kw, int c, std::vector<double> data) {
    FilterSet fs;
    fs.n = n;
    fs.kh = kh;
    fs.kw = kw;
    fs.c = c;
    fs.data = std::move(data);
    return fs;
}

FilterSet random_filterset(int n, int kh, int kw, int c, unsigned seed, bool dyadic) {
    FilterSet fs;
    fs.n = n;
    fs.kh = kh;
    fs.kw = kw;
    fs.c = c;
    fs.data.resize(static_cast<std::size_t>(n) * kh * kw * c);
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (double& x : fs.data) {
        x = dist(rng);
        if (dyadic) x = std::round(x * 64.0) / 64.0;
    }
    return fs;
}

Representative unit_rep(std::vector<double> v) {
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    Representative rep;
    rep.vector = std::move(v);
    if (norm == 0.0) {
        rep.is_zero = true;
        return rep;
    }
    for (double& x : rep.vector) x /= norm;
    rep.is_zero = false;
    return rep;
}

SimilarityMatrix make_w(int n, const std::vector<std::vector<double>>& upper) {
    SimilarityMatrix w;
    w.n = n;
    w.w.assign(static_cast<std::size_t>(n) * n, 0.0);
    w.is_zero.assign(n, 0);
    for (int i = 0; i < n; ++i) w.at(i, i) = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double s = upper[i][j - i - 1];
            w.at(i, j) = s;
            w.at(j, i) = s;
        }
    return w;
}

SimilarityMatrix random_w(int n, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<std::vector<double>> upper(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) upper[i].push_back(dist(rng));
    return make_w(n, upper);
}

DistanceMatrix make_d(int n, const std::vector<std::vector<double>>& upper) {
    DistanceMatrix d;
    d.n = n;
    d.d.assign(static_cast<std::size_t>(n) * n, 0.0);
    d.is_zero.assign(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = upper[i][j - i - 1];
            d.at(i, j) = v;
            d.at(j, i) = v;
        }
    return d;
}

std::vector<std::uint8_t> craft_npy(const std::string& header_dict,
                                    const std::vector<std::uint8_t>& payload,
                                    std::uint8_t version_major) {
    std::vector<std::uint8_t> out = {0x93, 'N', 'U', 'M', 'P', 'Y', version_major, 0};
    std::string dict = header_dict;
    dict += '\n';
    if (version_major == 1) {
        out.push_back(static_cast<std::uint8_t>(dict.size() & 0xff));
        out.push_back(static_cast<std::uint8_t>((dict.size() >> 8) & 0xff));
    } else {
        for (int shift = 0; shift < 32; shift += 8)
            out.push_back(static_cast<std::uint8_t>((dict.size() >> shift) & 0xff));
    }
    out.insert(out.end(), dict.begin(), dict.end());
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

TempDir::TempDir() {
    const auto base = std::filesystem::temp_directory_path();
    std::mt19937_64 rng(std::random_device{}());
    for (int attempt = 0; attempt < 100; ++attempt) {
        auto candidate = base / ("centprune-test-" + std::to_string(rng()));
        std::error_code ec;
        if (std::filesystem::create_directory(candidate, ec)) {
            path_ = candidate;
            return;
        }
    }
    std::abort();
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

CliResult run_cli(const std::string& args) {
    TempDir scratch;
    const std::string stdout_path = scratch.file("stdout.txt");
    const std::string cmd =
        std::string(CENTPRUNE_BIN_PATH) + " " + args + " > " + stdout_path + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    CliResult result;
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    result.output = read_file(stdout_path);
    return result;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string write_single_layer_model(const TempDir& dir, const FilterSet& fs,
                                     const std::string& layer_name, bool has_bias, int out_h,
                                     int out_w) {
    const std::string weights_name = layer_name + ".npy";
    Tensor t = make_tensor({static_cast<std::size_t>(fs.n), static_cast<std::size_t>(fs.kh),
                            static_cast<std::size_t>(fs.kw), static_cast<std::size_t>(fs.c)},
                           fs.data);
    write_npy_file(dir.file(weights_name), t);

    std::ostringstream manifest;
    manifest << "{\"layers\":[{\"name\":\"" << layer_name << "\",\"kind\":\"conv\",\"n\":" << fs.n
             << ",\"kernel_h\":" << fs.kh << ",\"kernel_w\":" << fs.kw << ",\"c\":" << fs.c
             << ",\"out_h\":" << out_h << ",\"out_w\":" << out_w
             << ",\"has_bias\":" << (has_bias ? "true" : "false") << ",\"weights_path\":\""
             << weights_name << "\",\"next_layer\":null,\"flatten_factor\":null}]}";
    const std::string manifest_path = dir.file("model.json");
    write_file(manifest_path, manifest.str());
    return manifest_path;
}

} // namespace testsupport
