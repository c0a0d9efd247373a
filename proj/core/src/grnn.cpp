#include "goldcast/baseline/grnn.hpp"

#include <cmath>
#include <limits>

#include "goldcast/errors.hpp"

namespace goldcast::baseline {

GrnnModel fit_grnn(const Matrix& x, const Matrix& y, int target_col,
                   std::span<const std::size_t> rows, double bandwidth) {
    if (rows.empty()) throw NumericError("fit_grnn: need at least one training pair");
    if (!(bandwidth > 0.0)) throw NumericError("fit_grnn: bandwidth must be positive");

    GrnnModel model;
    model.bandwidth = bandwidth;
    model.inputs = Matrix(rows.size(), x.cols());
    model.targets.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) model.inputs(i, j) = x(rows[i], j);
        model.targets[i] = y(rows[i], target_col);
    }
    return model;
}

double predict_grnn(const GrnnModel& model, std::span<const double> x, bool* used_fallback) {
    if (used_fallback) *used_fallback = false;
    const double two_bw2 = 2.0 * model.bandwidth * model.bandwidth;

    double num = 0.0, den = 0.0;
    std::size_t nearest = 0;
    double nearest_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < model.inputs.rows(); ++i) {
        const double d2 = norm_sq_diff(x, model.inputs.row(i));
        if (d2 < nearest_d2) {
            nearest_d2 = d2;
            nearest = i;
        }
        const double k = std::exp(-d2 / two_bw2);
        num += model.targets[i] * k;
        den += k;
    }
    if (den <= 0.0 || !std::isfinite(num / den)) {
        if (used_fallback) *used_fallback = true;
        return model.targets[nearest];
    }
    return num / den;
}

}  // namespace goldcast::baseline
