#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace goldcast {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles. All network arithmetic is double precision.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    void set_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// y = M x
void matvec(const Matrix& m, std::span<const double> x, std::span<double> y);
/// y += M x
void matvec_acc(const Matrix& m, std::span<const double> x, std::span<double> y);
/// y += M^T x
void matTvec_acc(const Matrix& m, std::span<const double> x, std::span<double> y);
/// M += a b^T (rank-1 update)
void add_outer(Matrix& m, std::span<const double> a, std::span<const double> b);

double dot(std::span<const double> a, std::span<const double> b);
double norm_sq_diff(std::span<const double> a, std::span<const double> b);

/// Solves the symmetric positive-definite system A x = b via Cholesky.
/// Returns nullopt when A is not numerically positive definite.
std::optional<Vector> cholesky_solve(const Matrix& a, const Vector& b);

}  // namespace goldcast
