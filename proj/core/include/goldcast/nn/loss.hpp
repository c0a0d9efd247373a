#pragma once

#include <span>
#include <vector>

namespace goldcast::nn {

double mse(std::span<const double> pred, std::span<const double> target);
double mae(std::span<const double> pred, std::span<const double> target);
double rmse(std::span<const double> pred, std::span<const double> target);

/// d(mse)/d(pred) = 2 (pred - target) / n
std::vector<double> mse_grad(std::span<const double> pred, std::span<const double> target);

}  // namespace goldcast::nn
