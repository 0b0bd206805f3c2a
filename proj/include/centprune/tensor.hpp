#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace centprune {

// Dense n-dimensional array, row-major (C order). Values are held as double
// regardless of the on-disk width; float32 payloads embed exactly.
struct Tensor {
    std::vector<std::size_t> shape;
    std::vector<double> data;

    std::size_t size() const { return data.size(); }
};

// One convolutional layer's filters as a (n, kh, kw, c) block. Filter i is the
// contiguous kh*kw*c slice starting at i * filter_size().
struct FilterSet {
    int n = 0;
    int kh = 0;
    int kw = 0;
    int c = 0;
    std::vector<double> data;

    std::size_t filter_size() const {
        return static_cast<std::size_t>(kh) * static_cast<std::size_t>(kw) *
               static_cast<std::size_t>(c);
    }

    std::span<const double> filter(int i) const {
        return std::span<const double>(data).subspan(static_cast<std::size_t>(i) * filter_size(),
                                                     filter_size());
    }
};

} // namespace centprune
