#include "matrix.hpp"

#include "error.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

namespace svdmark {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstView = Eigen::Map<const RowMajor>;
using View = Eigen::Map<RowMajor>;

ConstView view(const Matrix& m) {
    return ConstView(m.data().data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
}

View view(Matrix& m) {
    return View(m.data().data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
}

std::string shape(const Matrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// Flip column `col` of `m` if its largest-magnitude entry is negative.
bool needs_flip(const Eigen::MatrixXd& m, Eigen::Index col) {
    Eigen::Index best = 0;
    double best_mag = -1.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        const double mag = std::abs(m(r, col));
        if (mag > best_mag) {
            best_mag = mag;
            best = r;
        }
    }
    return m(best, col) < 0.0;
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0)
        fail(ErrorCode::DimensionError, "matrix extents must be positive");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0)
        fail(ErrorCode::DimensionError, "matrix extents must be positive");
    if (data_.size() != rows * cols)
        fail(ErrorCode::DimensionError, "matrix data length " + std::to_string(data_.size()) + " does not match "
                                            + std::to_string(rows) + "x" + std::to_string(cols));
    require_finite(data_, "matrix");
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    std::vector<double> data;
    data.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c)
            fail(ErrorCode::DimensionError, "ragged matrix literal");
        data.insert(data.end(), row.begin(), row.end());
    }
    return Matrix(r, c, std::move(data));
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

Matrix Matrix::constant(std::size_t rows, std::size_t cols, double value) {
    return Matrix(rows, cols, std::vector<double>(rows * cols, value));
}

Matrix Matrix::diagonal(std::size_t rows, std::size_t cols, std::span<const double> diag) {
    Matrix m(rows, cols);
    if (diag.size() > std::min(rows, cols))
        fail(ErrorCode::DimensionError, "diagonal longer than min(rows, cols)");
    require_finite(diag, "diagonal");
    for (std::size_t i = 0; i < diag.size(); ++i)
        m(i, i) = diag[i];
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (!a.same_shape(b))
        fail(ErrorCode::DimensionError, std::string(what) + ": shape " + shape(a) + " vs " + shape(b));
}

void require_finite(std::span<const double> values, const char* what) {
    for (double v : values)
        if (!std::isfinite(v))
            fail(ErrorCode::InvalidInput, std::string(what) + ": non-finite entry");
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "matrix addition");
    Matrix out = a;
    auto o = out.data();
    auto bd = b.data();
    for (std::size_t i = 0; i < o.size(); ++i)
        o[i] += bd[i];
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "matrix subtraction");
    Matrix out = a;
    auto o = out.data();
    auto bd = b.data();
    for (std::size_t i = 0; i < o.size(); ++i)
        o[i] -= bd[i];
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        fail(ErrorCode::DimensionError, "matrix product: " + shape(a) + " * " + shape(b));
    Matrix out(a.rows(), b.cols());
    view(out).noalias() = view(a) * view(b);
    return out;
}

Matrix operator*(double k, const Matrix& a) {
    Matrix out = a;
    for (double& v : out.data())
        v *= k;
    return out;
}

double frobenius_norm(const Matrix& m) {
    return view(m).norm();
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double worst = 0.0;
    auto ad = a.data();
    auto bd = b.data();
    for (std::size_t i = 0; i < ad.size(); ++i)
        worst = std::max(worst, std::abs(ad[i] - bd[i]));
    return worst;
}

double relative_error(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "relative_error");
    const double diff = (view(a) - view(b)).norm();
    const double ref = view(b).norm();
    return ref > 0.0 ? diff / ref : diff;
}

double orthogonality_residual(const Matrix& m) {
    if (!m.is_square())
        fail(ErrorCode::DimensionError, "orthogonality_residual needs a square matrix, got " + shape(m));
    const auto n = static_cast<Eigen::Index>(m.rows());
    const Eigen::MatrixXd gram = view(m).transpose() * view(m);
    return (gram - Eigen::MatrixXd::Identity(n, n)).norm();
}

std::vector<double> SvdFactors::singular_values() const {
    const std::size_t k = std::min(s.rows(), s.cols());
    std::vector<double> out(k);
    for (std::size_t i = 0; i < k; ++i)
        out[i] = s(i, i);
    return out;
}

SvdFactors svd(const Matrix& a) {
    if (a.empty())
        fail(ErrorCode::InvalidInput, "svd of an empty matrix");
    require_finite(a.data(), "svd input");

    const Eigen::MatrixXd dense = view(a);
    Eigen::BDCSVD<Eigen::MatrixXd> solver(dense, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::MatrixXd u = solver.matrixU();
    Eigen::MatrixXd v = solver.matrixV();
    const Eigen::VectorXd& sigma = solver.singularValues();

    const Eigen::Index k = sigma.size();
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
        if (needs_flip(u, j)) {
            u.col(j) *= -1.0;
            if (j < k)
                v.col(j) *= -1.0;
        }
    }
    for (Eigen::Index j = k; j < v.cols(); ++j)
        if (needs_flip(v, j))
            v.col(j) *= -1.0;

    SvdFactors f{Matrix(a.rows(), a.rows()), Matrix(a.rows(), a.cols()), Matrix(a.cols(), a.cols())};
    view(f.u) = u;
    view(f.v) = v;
    for (Eigen::Index i = 0; i < k; ++i)
        f.s(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = sigma(i);
    return f;
}

Matrix reconstruct(const Matrix& u, const Matrix& s, const Matrix& v) {
    if (!u.is_square() || !v.is_square() || u.rows() != s.rows() || v.rows() != s.cols())
        fail(ErrorCode::DimensionError,
             "reconstruct: factors " + shape(u) + ", " + shape(s) + ", " + shape(v) + " are not conformable");
    Matrix out(u.rows(), v.rows());
    view(out).noalias() = view(u) * view(s) * view(v).transpose();
    return out;
}

Matrix reconstruct(const SvdFactors& f) {
    return reconstruct(f.u, f.s, f.v);
}

} // namespace svdmark
