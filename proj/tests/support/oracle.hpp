#pragma once

// Independent reference computations for tests. Nothing here goes through the
// library's SVD (Eigen); decompositions come from LAPACK dgesvd.

#include "analysis.hpp"
#include "matrix.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracle {

struct Svd {
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<double> u;     // m x m row-major
    std::vector<double> sigma; // min(m, n)
    std::vector<double> v;     // n x n row-major (V, not V^T)
};

inline Svd lapack_svd(const svdmark::Matrix& a) {
    Svd out;
    out.m = a.rows();
    out.n = a.cols();
    std::vector<double> work(a.data().begin(), a.data().end());
    const std::size_t k = std::min(out.m, out.n);
    out.u.assign(out.m * out.m, 0.0);
    out.sigma.assign(k, 0.0);
    std::vector<double> vt(out.n * out.n, 0.0);
    std::vector<double> superb(k > 1 ? k - 1 : 1, 0.0);
    const lapack_int info = LAPACKE_dgesvd(LAPACK_ROW_MAJOR, 'A', 'A', static_cast<lapack_int>(out.m),
                                           static_cast<lapack_int>(out.n), work.data(),
                                           static_cast<lapack_int>(out.n), out.sigma.data(), out.u.data(),
                                           static_cast<lapack_int>(out.m), vt.data(),
                                           static_cast<lapack_int>(out.n), superb.data());
    if (info != 0)
        throw std::runtime_error("dgesvd failed");
    out.v.assign(out.n * out.n, 0.0);
    for (std::size_t i = 0; i < out.n; ++i)
        for (std::size_t j = 0; j < out.n; ++j)
            out.v[i * out.n + j] = vt[j * out.n + i];
    // Same canonical sign rule as the library, written out independently.
    for (std::size_t j = 0; j < out.m; ++j) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < out.m; ++i)
            if (std::abs(out.u[i * out.m + j]) > std::abs(out.u[best * out.m + j]))
                best = i;
        if (out.u[best * out.m + j] < 0.0) {
            for (std::size_t i = 0; i < out.m; ++i)
                out.u[i * out.m + j] = -out.u[i * out.m + j];
            if (j < k)
                for (std::size_t i = 0; i < out.n; ++i)
                    out.v[i * out.n + j] = -out.v[i * out.n + j];
        }
    }
    return out;
}

inline svdmark::Matrix u_of(const Svd& s) {
    return svdmark::Matrix(s.m, s.m, s.u);
}
inline svdmark::Matrix v_of(const Svd& s) {
    return svdmark::Matrix(s.n, s.n, s.v);
}
inline svdmark::Matrix s_of(const Svd& s) {
    return svdmark::Matrix::diagonal(s.m, s.n, s.sigma);
}

// Triple loops, no Eigen.
inline svdmark::Matrix naive_product(const svdmark::Matrix& a, const svdmark::Matrix& b) {
    svdmark::Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) += aik * b(k, j);
        }
    return out;
}

inline double pearson(const svdmark::Matrix& a, const svdmark::Matrix& b) {
    const auto x = a.data();
    const auto y = b.data();
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double cxy = 0, cxx = 0, cyy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        cxy += (x[i] - mx) * (y[i] - my);
        cxx += (x[i] - mx) * (x[i] - mx);
        cyy += (y[i] - my) * (y[i] - my);
    }
    return cxy / std::sqrt(cxx * cyy);
}

inline svdmark::Matrix uniform_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo = 0.0,
                                      double hi = 255.0) {
    svdmark::Rng rng(seed);
    svdmark::Matrix m(rows, cols);
    for (double& v : m.data())
        v = lo + (hi - lo) * rng.uniform();
    return m;
}

} // namespace oracle
