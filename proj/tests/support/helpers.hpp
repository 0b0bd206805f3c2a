#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "centprune/manifest.hpp"
#include "centprune/npy.hpp"
#include "centprune/representatives.hpp"
#include "centprune/similarity.hpp"
#include "centprune/tensor.hpp"

namespace testsupport {

centprune::Tensor make_tensor(std::vector<std::size_t> shape, std::vector<double> data);

centprune::FilterSet make_filterset(int n, int kh, int kw, int c, std::vector<double> data);

// Gaussian filters; dyadic=true rounds entries to multiples of 1/64 so that
// scaling by 10 (and any small rational) stays exact in double precision.
centprune::FilterSet random_filterset(int n, int kh, int kw, int c, unsigned seed,
                                      bool dyadic = false);

centprune::Representative unit_rep(std::vector<double> v);

// Symmetric similarity matrix from the strict upper triangle, unit diagonal.
centprune::SimilarityMatrix make_w(int n, const std::vector<std::vector<double>>& upper);

centprune::SimilarityMatrix random_w(int n, std::mt19937& rng);

centprune::DistanceMatrix make_d(int n, const std::vector<std::vector<double>>& upper);

// Raw .npy image from explicit header parts, for malformed-input tests.
std::vector<std::uint8_t> craft_npy(const std::string& header_dict,
                                    const std::vector<std::uint8_t>& payload,
                                    std::uint8_t version_major = 1);

// Scratch directory under the system temp root, removed on destruction.
class TempDir {
  public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

  private:
    std::filesystem::path path_;
};

struct CliResult {
    int exit_code = -1;
    std::string output; // stdout
};

// Runs the real CLI binary (path baked in at compile time).
CliResult run_cli(const std::string& args);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Single-conv-layer manifest JSON next to a weights file written from `fs`.
// Returns the manifest path.
std::string write_single_layer_model(const TempDir& dir, const centprune::FilterSet& fs,
                                     const std::string& layer_name = "C1", bool has_bias = true,
                                     int out_h = 8, int out_w = 8);

} // namespace testsupport
