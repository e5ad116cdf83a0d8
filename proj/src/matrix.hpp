#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace svdmark {

/// Dense real matrix, row-major, 64-bit. Entries are finite at construction.
class Matrix {
public:
    Matrix() = default;
    /// Zero-filled rows x cols matrix. Both extents must be positive.
    Matrix(std::size_t rows, std::size_t cols);
    /// Takes ownership of row-major data; throws InvalidInput on non-finite entries
    /// and DimensionError when data.size() != rows * cols.
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static Matrix identity(std::size_t n);
    static Matrix constant(std::size_t rows, std::size_t cols, double value);
    static Matrix diagonal(std::size_t rows, std::size_t cols, std::span<const double> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    bool same_shape(const Matrix& other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    Matrix transposed() const;

    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double k, const Matrix& a);

/// Throws DimensionError with `what` as context unless a and b share a shape.
void require_same_shape(const Matrix& a, const Matrix& b, const char* what);
/// Throws InvalidInput if any entry is NaN or infinite.
void require_finite(std::span<const double> values, const char* what);

double frobenius_norm(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);
/// ||a - b||_F / ||b||_F, or ||a||_F when b is zero.
double relative_error(const Matrix& a, const Matrix& b);
/// ||M^T M - I||_F; M must be square.
double orthogonality_residual(const Matrix& m);

/// Full SVD a = u * s * v^T with u M x M, s M x N, v N x N.
///
/// Canonical form: singular values non-negative and descending on the diagonal
/// of s (off-diagonal entries exactly zero); in every column of u the entry of
/// largest magnitude is non-negative, lowest row index winning ties, with the
/// matching column of v flipped alongside. Columns of v beyond min(M, N) follow
/// the same rule on their own. Bit-deterministic for identical input.
struct SvdFactors {
    Matrix u;
    Matrix s;
    Matrix v;

    std::vector<double> singular_values() const;
};

SvdFactors svd(const Matrix& a);
Matrix reconstruct(const SvdFactors& f);
/// u * s * v^T for explicit factors; DimensionError when not conformable.
Matrix reconstruct(const Matrix& u, const Matrix& s, const Matrix& v);

} // namespace svdmark
