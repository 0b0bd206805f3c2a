#include "centprune/representatives.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "centprune/error.hpp"

namespace centprune {

namespace {

constexpr double kSigmaRelTol = 1e-12;
constexpr int kMaxSweeps = 10000;

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Largest-magnitude index, lowest index on ties.
int argmax_abs(std::span<const double> v) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(v.size()); ++i)
        if (std::abs(v[i]) > std::abs(v[best])) best = i;
    return best;
}

// Symmetric Gram matrix of the smaller side: m * m^T when rows <= cols,
// m^T * m otherwise.
std::vector<double> gram_small_side(const Matrix& m, bool rows_side) {
    const int dim = rows_side ? m.rows : m.cols;
    std::vector<double> g(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            double s = 0.0;
            if (rows_side) {
                for (int k = 0; k < m.cols; ++k) s += m.at(i, k) * m.at(j, k);
            } else {
                for (int k = 0; k < m.rows; ++k) s += m.at(k, i) * m.at(k, j);
            }
            g[static_cast<std::size_t>(i) * dim + j] = s;
            g[static_cast<std::size_t>(j) * dim + i] = s;
        }
    }
    return g;
}

void sym_matvec(const std::vector<double>& g, int dim, const std::vector<double>& x,
                std::vector<double>& y) {
    for (int i = 0; i < dim; ++i) {
        double s = 0.0;
        const double* row = g.data() + static_cast<std::size_t>(i) * dim;
        for (int j = 0; j < dim; ++j) s += row[j] * x[j];
        y[i] = s;
    }
}

} // namespace

Matrix flatten_filter(std::span<const double> filter, int kh, int kw, int c) {
    Matrix m(kh * kw, c);
    // (kh, kw, c) row-major already stores spatial position (i, j) at row
    // i*kw + j, so flattening is a straight copy.
    std::memcpy(m.a.data(), filter.data(), filter.size() * sizeof(double));
    return m;
}

Matrix flatten_filter(const FilterSet& filters, int i) {
    return flatten_filter(filters.filter(i), filters.kh, filters.kw, filters.c);
}

SingularTriplet leading_singular_triplet(const Matrix& m) {
    double scale = 0.0;
    for (double x : m.a) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) throw Error(ErrorCode::ZeroMatrix, "matrix has no nonzero entry");

    Matrix work(m.rows, m.cols);
    for (std::size_t i = 0; i < m.a.size(); ++i) work.a[i] = m.a[i] / scale;

    const bool rows_side = m.rows <= m.cols;
    const int dim = rows_side ? m.rows : m.cols;
    const std::vector<double> g = gram_small_side(work, rows_side);

    std::vector<double> v(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    std::vector<double> y(dim, 0.0);

    sym_matvec(g, dim, v, y);
    double lambda = norm2(y);
    if (lambda == 0.0) {
        // The all-ones start is orthogonal to the range; fall back to the
        // first basis vector with a nonzero Gram column.
        for (int k = 0; k < dim && lambda == 0.0; ++k) {
            std::fill(v.begin(), v.end(), 0.0);
            v[k] = 1.0;
            sym_matvec(g, dim, v, y);
            lambda = norm2(y);
        }
        if (lambda == 0.0) throw Error(ErrorCode::ZeroMatrix, "matrix has no nonzero entry");
    }

    double sigma_prev = std::sqrt(lambda);
    for (std::size_t i = 0; i < y.size(); ++i) v[i] = y[i] / lambda;

    bool converged = false;
    for (int sweep = 1; sweep < kMaxSweeps; ++sweep) {
        sym_matvec(g, dim, v, y);
        lambda = norm2(y);
        const double sigma = std::sqrt(lambda);
        for (std::size_t i = 0; i < y.size(); ++i) v[i] = y[i] / lambda;
        if (std::abs(sigma - sigma_prev) <= kSigmaRelTol * sigma) {
            converged = true;
            break;
        }
        sigma_prev = sigma;
    }
    if (!converged)
        throw Error(ErrorCode::NoConvergence, "power iteration did not converge in 10000 sweeps");

    // v is the unit singular vector on the Gram side; cross-multiply for the
    // other side and recover sigma as the cross-product norm.
    SingularTriplet t;
    std::vector<double> cross(rows_side ? m.cols : m.rows, 0.0);
    if (rows_side) {
        for (int j = 0; j < work.cols; ++j) {
            double s = 0.0;
            for (int i = 0; i < work.rows; ++i) s += work.at(i, j) * v[i];
            cross[j] = s;
        }
        t.sigma = norm2(cross);
        for (double& x : cross) x /= t.sigma;
        t.left = std::move(v);
        t.right = std::move(cross);
    } else {
        for (int i = 0; i < work.rows; ++i) {
            double s = 0.0;
            for (int j = 0; j < work.cols; ++j) s += work.at(i, j) * v[j];
            cross[i] = s;
        }
        t.sigma = norm2(cross);
        for (double& x : cross) x /= t.sigma;
        t.left = std::move(cross);
        t.right = std::move(v);
    }

    const int pivot = argmax_abs(t.left);
    if (t.left[pivot] < 0.0) {
        for (double& x : t.left) x = -x;
        for (double& x : t.right) x = -x;
    }
    t.sigma *= scale;
    return t;
}

Representative representative(std::span<const double> filter, int kh, int kw, int c) {
    Representative rep;
    bool all_zero = true;
    for (double x : filter)
        if (x != 0.0) {
            all_zero = false;
            break;
        }
    if (all_zero) {
        rep.vector.assign(static_cast<std::size_t>(kh) * kw, 0.0);
        rep.is_zero = true;
        return rep;
    }
    SingularTriplet t = leading_singular_triplet(flatten_filter(filter, kh, kw, c));
    rep.vector = std::move(t.left);
    rep.is_zero = false;
    return rep;
}

std::vector<Representative> make_representatives(const FilterSet& filters) {
    std::vector<Representative> reps(filters.n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < filters.n; ++i)
        reps[i] = representative(filters.filter(i), filters.kh, filters.kw, filters.c);
    return reps;
}

namespace serial {
std::vector<Representative> make_representatives(const FilterSet& filters) {
    std::vector<Representative> reps(filters.n);
    for (int i = 0; i < filters.n; ++i)
        reps[i] = representative(filters.filter(i), filters.kh, filters.kw, filters.c);
    return reps;
}
} // namespace serial

} // namespace centprune
