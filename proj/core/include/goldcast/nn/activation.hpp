#pragma once

#include <cmath>

namespace goldcast::nn {

enum class Activation { identity, leaky_relu };

inline double leaky_relu(double x, double alpha) { return x >= 0.0 ? x : alpha * x; }

/// Subgradient at 0 is defined as 1 (the x >= 0 branch).
inline double leaky_relu_grad(double x, double alpha) { return x >= 0.0 ? 1.0 : alpha; }

inline double apply_activation(Activation act, double x, double alpha) {
    return act == Activation::leaky_relu ? leaky_relu(x, alpha) : x;
}

inline double activation_grad(Activation act, double x, double alpha) {
    return act == Activation::leaky_relu ? leaky_relu_grad(x, alpha) : 1.0;
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace goldcast::nn
