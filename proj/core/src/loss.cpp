#include "goldcast/nn/loss.hpp"

#include <cmath>
#include <string>

#include "goldcast/errors.hpp"

namespace goldcast::nn {

namespace {
void check_lengths(std::span<const double> pred, std::span<const double> target) {
    if (pred.empty() || pred.size() != target.size())
        throw NumericError("loss: length mismatch (" + std::to_string(pred.size()) + " vs " +
                           std::to_string(target.size()) + ")");
}
}  // namespace

double mse(std::span<const double> pred, std::span<const double> target) {
    check_lengths(pred, target);
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - target[i];
        acc += d * d;
    }
    return acc / static_cast<double>(pred.size());
}

double mae(std::span<const double> pred, std::span<const double> target) {
    check_lengths(pred, target);
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) acc += std::fabs(pred[i] - target[i]);
    return acc / static_cast<double>(pred.size());
}

double rmse(std::span<const double> pred, std::span<const double> target) {
    return std::sqrt(mse(pred, target));
}

std::vector<double> mse_grad(std::span<const double> pred, std::span<const double> target) {
    check_lengths(pred, target);
    std::vector<double> g(pred.size());
    const double scale = 2.0 / static_cast<double>(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i) g[i] = scale * (pred[i] - target[i]);
    return g;
}

}  // namespace goldcast::nn
