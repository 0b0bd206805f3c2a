#pragma once

#include <span>
#include <vector>

#include "centprune/matrix.hpp"
#include "centprune/tensor.hpp"

namespace centprune {

// Unit vector of length kh*kw summarizing one filter. Zero filters carry the
// is_zero flag and an all-zero vector instead of a direction.
struct Representative {
    std::vector<double> vector;
    bool is_zero = false;
};

struct SingularTriplet {
    double sigma = 0.0;
    std::vector<double> left;   // unit length, largest-magnitude entry positive
    std::vector<double> right;  // unit length, sign tied to left
};

// Reshapes one (kh, kw, c) filter block into its (kh*kw) x c matrix.
Matrix flatten_filter(std::span<const double> filter, int kh, int kw, int c);
Matrix flatten_filter(const FilterSet& filters, int i);

// Leading singular triplet by power iteration on the smaller Gram matrix.
// Deterministic: all-ones start vector, relative tolerance 1e-12 on sigma
// between sweeps, at most 10000 sweeps. The input is scaled by its largest
// entry magnitude before iterating so that rescaled inputs take bit-identical
// paths; sigma is scaled back on return.
SingularTriplet leading_singular_triplet(const Matrix& m);

Representative representative(std::span<const double> filter, int kh, int kw, int c);

// Per-filter representatives for a whole layer. OpenMP-parallel across
// filters; each filter's computation is independent, so the result does not
// depend on the thread count.
std::vector<Representative> make_representatives(const FilterSet& filters);

namespace serial {
std::vector<Representative> make_representatives(const FilterSet& filters);
}

} // namespace centprune
