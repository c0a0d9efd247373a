#include "goldcast/nn/adam.hpp"

#include <cmath>

#include "goldcast/errors.hpp"

namespace goldcast::nn {

Adam::Adam(const AdamConfig& config, std::size_t n_params)
    : config_(config), first_moment_(n_params, 0.0), second_moment_(n_params, 0.0) {}

void Adam::step(const ParamList& params) {
    ++step_count_;
    const double bc1 = 1.0 - std::pow(config_.beta1, static_cast<double>(step_count_));
    const double bc2 = 1.0 - std::pow(config_.beta2, static_cast<double>(step_count_));
    std::size_t i = 0;
    for (const auto& block : params) {
        for (std::size_t k = 0; k < block.value.size(); ++k, ++i) {
            const double g = block.grad[k];
            if (!std::isfinite(g))
                throw NumericError("adam: non-finite gradient, training aborted");
            first_moment_[i] = config_.beta1 * first_moment_[i] + (1.0 - config_.beta1) * g;
            second_moment_[i] =
                config_.beta2 * second_moment_[i] + (1.0 - config_.beta2) * g * g;
            const double m_hat = first_moment_[i] / bc1;
            const double v_hat = second_moment_[i] / bc2;
            block.value[k] -= config_.learning_rate * m_hat / (std::sqrt(v_hat) + config_.epsilon);
        }
    }
}

void GradientDescent::step(const ParamList& params) {
    for (const auto& block : params) {
        for (std::size_t k = 0; k < block.value.size(); ++k) {
            if (!std::isfinite(block.grad[k]))
                throw NumericError("sgd: non-finite gradient, training aborted");
            block.value[k] -= learning_rate_ * block.grad[k];
        }
    }
}

}  // namespace goldcast::nn
