#pragma once

#include <cstdint>

#include "goldcast/nn/params.hpp"

namespace goldcast::nn {

struct AdamConfig {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// Standard Adam with bias correction. Moments are zero at step 0; step_count
/// increments once per update. Throws NumericError on non-finite gradients.
class Adam {
public:
    Adam(const AdamConfig& config, std::size_t n_params);

    void step(const ParamList& params);

    std::int64_t step_count() const { return step_count_; }
    const AdamConfig& config() const { return config_; }

private:
    AdamConfig config_;
    std::vector<double> first_moment_;
    std::vector<double> second_moment_;
    std::int64_t step_count_ = 0;
};

/// Plain gradient descent with a fixed learning rate (the BPNN baseline's
/// update rule). Same non-finite-gradient policy as Adam.
class GradientDescent {
public:
    explicit GradientDescent(double learning_rate) : learning_rate_(learning_rate) {}
    void step(const ParamList& params);

private:
    double learning_rate_;
};

}  // namespace goldcast::nn
