#pragma once

#include "goldcast/matrix.hpp"
#include "goldcast/nn/activation.hpp"
#include "goldcast/nn/params.hpp"
#include "goldcast/rng.hpp"

namespace goldcast::nn {

enum class Mode { train, infer };

/// Fully connected layer with optional inverted dropout on its output.
struct DenseLayer {
    Matrix weights;  // out x in
    Vector biases;   // out
    Activation activation = Activation::leaky_relu;
    double leak = 0.01;

    Matrix grad_weights;
    Vector grad_biases;

    DenseLayer() = default;
    /// Uniform init in +-sqrt(6 / (fan_in + fan_out)).
    DenseLayer(std::size_t in_dim, std::size_t out_dim, Activation act, Rng& rng,
               double leak_coeff = 0.01);

    std::size_t in_dim() const { return weights.cols(); }
    std::size_t out_dim() const { return weights.rows(); }
    void append_params(ParamList& out);
};

struct DenseCache {
    Vector input;
    Vector preact;
    Vector output;      // post-activation, post-dropout
    Vector drop_scale;  // per-unit 0 or 1/(1-rate); empty when no dropout applied
};

/// activation(W x + b), with inverted dropout in train mode (survivors scaled
/// by 1/(1-rate)); infer mode never applies dropout. Throws NumericError on a
/// dimension mismatch.
Vector dense_forward(const DenseLayer& layer, std::span<const double> input, Mode mode,
                     double dropout_rate, Rng* rng, DenseCache* cache = nullptr);

/// Accumulates grad_weights/grad_biases from the cached forward pass and
/// returns the gradient w.r.t. the layer input.
Vector dense_backward(DenseLayer& layer, const DenseCache& cache,
                      std::span<const double> grad_output);

}  // namespace goldcast::nn
