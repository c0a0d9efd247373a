#include "goldcast/matrix.hpp"

#include <cmath>

namespace goldcast {

void matvec(const Matrix& m, std::span<const double> x, std::span<double> y) {
    std::fill(y.begin(), y.end(), 0.0);
    matvec_acc(m, x, y);
}

void matvec_acc(const Matrix& m, std::span<const double> x, std::span<double> y) {
    const std::size_t rows = m.rows(), cols = m.cols();
    const double* p = m.data();
    for (std::size_t r = 0; r < rows; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < cols; ++c) acc += p[r * cols + c] * x[c];
        y[r] += acc;
    }
}

void matTvec_acc(const Matrix& m, std::span<const double> x, std::span<double> y) {
    const std::size_t rows = m.rows(), cols = m.cols();
    const double* p = m.data();
    for (std::size_t r = 0; r < rows; ++r) {
        const double xr = x[r];
        for (std::size_t c = 0; c < cols; ++c) y[c] += p[r * cols + c] * xr;
    }
}

void add_outer(Matrix& m, std::span<const double> a, std::span<const double> b) {
    const std::size_t rows = m.rows(), cols = m.cols();
    double* p = m.data();
    for (std::size_t r = 0; r < rows; ++r) {
        const double ar = a[r];
        for (std::size_t c = 0; c < cols; ++c) p[r * cols + c] += ar * b[c];
    }
}

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm_sq_diff(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

std::optional<Vector> cholesky_solve(const Matrix& a, const Vector& b) {
    const std::size_t n = a.rows();
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (!(diag > 0.0) || !std::isfinite(diag)) return std::nullopt;
        const double ljj = std::sqrt(diag);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / ljj;
        }
    }
    // forward then backward substitution
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
        y[i] = s / l(i, i);
    }
    Vector x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x[k];
        x[ii] = s / l(ii, ii);
    }
    return x;
}

}  // namespace goldcast
