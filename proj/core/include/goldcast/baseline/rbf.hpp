#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "goldcast/matrix.hpp"
#include "goldcast/rng.hpp"

namespace goldcast::baseline {

/// Gaussian radial-basis regression: k-means centers, one shared width, and a
/// linear readout (plus bias) fitted by least squares.
struct RbfNetwork {
    Matrix centers;        // m x features
    Vector widths;         // per center, all = bandwidth here
    Vector weights;        // m + 1, last entry is the bias
    bool ridge_fallback = false;  // set when the normal equations needed lambda
};

/// Lloyd's k-means with seeded initialization; empty clusters are reseeded
/// with the farthest point. Deterministic per seed.
Matrix kmeans_centers(const Matrix& x, std::span<const std::size_t> rows, std::size_t m,
                      std::uint64_t seed, std::size_t max_iters = 50);

/// m <= number of training rows required. Solves the normal equations by
/// Cholesky; on a singular system retries with ridge lambda = 1e-8 and marks
/// ridge_fallback.
RbfNetwork fit_rbf(const Matrix& x, const Matrix& y, int target_col,
                   std::span<const std::size_t> rows, std::size_t m, double bandwidth,
                   std::uint64_t seed);

double predict_rbf(const RbfNetwork& model, std::span<const double> x);

}  // namespace goldcast::baseline
