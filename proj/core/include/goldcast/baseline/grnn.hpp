#pragma once

#include <span>
#include <vector>

#include "goldcast/matrix.hpp"

namespace goldcast::baseline {

/// General regression network: Nadaraya-Watson with a Gaussian kernel over the
/// stored training pairs. Predictions are convex combinations of the training
/// targets, so they stay inside [min(y), max(y)].
struct GrnnModel {
    Matrix inputs;   // n x features
    Vector targets;  // n
    double bandwidth = 1.0;
};

GrnnModel fit_grnn(const Matrix& x, const Matrix& y, int target_col,
                   std::span<const std::size_t> rows, double bandwidth);

/// When every kernel weight underflows to zero the nearest neighbour's target
/// is returned and *used_fallback (if given) is set.
double predict_grnn(const GrnnModel& model, std::span<const double> x,
                    bool* used_fallback = nullptr);

}  // namespace goldcast::baseline
