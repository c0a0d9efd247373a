#pragma once

#include <vector>

#include "goldcast/nn/dense.hpp"
#include "goldcast/nn/train.hpp"

namespace goldcast::nn {

/// Feedforward stack: hidden layers use leaky ReLU with dropout, the output
/// layer is identity with no dropout.
class Mlp {
public:
    Mlp() = default;
    Mlp(std::size_t in_dim, const std::vector<std::size_t>& hidden, std::size_t out_dim,
        Rng& rng, double leak = 0.01);

    Vector forward(std::span<const double> input, Mode mode, double dropout_rate, Rng* rng,
                   std::vector<DenseCache>* caches = nullptr) const;
    /// Returns the gradient w.r.t. the input; accumulates parameter gradients.
    Vector backward(const std::vector<DenseCache>& caches, std::span<const double> grad_output);

    ParamList params();
    std::size_t in_dim() const { return layers_.front().in_dim(); }
    std::size_t out_dim() const { return layers_.back().out_dim(); }
    std::vector<DenseLayer>& layers() { return layers_; }
    const std::vector<DenseLayer>& layers() const { return layers_; }

private:
    std::vector<DenseLayer> layers_;
};

/// Adapter giving a scalar-output Mlp the model interface used by nn::fit.
class MlpRegressor {
public:
    MlpRegressor() = default;
    MlpRegressor(Mlp net) : net_(std::move(net)) {}

    double forward_backward(const TabularDataset& ds, std::size_t i, double dropout, Rng& rng);
    double eval_loss(const TabularDataset& ds, std::size_t i) const;
    double predict(std::span<const double> x) const {
        return net_.forward(x, Mode::infer, 0.0, nullptr)[0];
    }

    ParamList params() { return net_.params(); }
    Mlp& net() { return net_; }
    const Mlp& net() const { return net_; }

private:
    Mlp net_;
};

}  // namespace goldcast::nn
