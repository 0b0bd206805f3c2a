#pragma once

// Reader/writer for the NumPy .npy binary array format.
//
// Layout: 6-byte magic "\x93NUMPY", one version byte pair, a little-endian
// header length (2 bytes for v1.0, 4 bytes for v2.0), an ASCII header dict
// ("{'descr': '<f8', 'fortran_order': False, 'shape': (2, 3), }"), then the
// raw payload. Only little-endian float32/float64 in C order is accepted;
// anything else is a typed error, never a crash.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "centprune/tensor.hpp"

namespace centprune {

enum class NpyDtype { f4, f8 };

Tensor parse_npy(std::span<const std::uint8_t> bytes);
Tensor parse_npy_file(const std::string& path);

std::vector<std::uint8_t> write_npy(const Tensor& t, NpyDtype dtype = NpyDtype::f8);
void write_npy_file(const std::string& path, const Tensor& t, NpyDtype dtype = NpyDtype::f8);

} // namespace centprune
