#pragma once

#include <cmath>
#include <functional>

#include "goldcast/nn/params.hpp"

namespace goldcast::testing {

/// Central finite differences against the analytic gradient.
/// Returns max over parameters of |analytic - numeric| / max(1, |a|, |n|).
/// `loss` must recompute the scalar loss from the current parameter values;
/// `fill_grads` must zero and then populate the gradient buffers analytically.
inline double max_grad_rel_error(const nn::ParamList& params,
                                 const std::function<double()>& loss,
                                 const std::function<void()>& fill_grads,
                                 double h = 1e-5) {
    fill_grads();
    std::vector<double> analytic;
    for (const auto& block : params)
        analytic.insert(analytic.end(), block.grad.begin(), block.grad.end());

    double worst = 0.0;
    std::size_t k = 0;
    for (const auto& block : params) {
        for (std::size_t i = 0; i < block.value.size(); ++i, ++k) {
            const double saved = block.value[i];
            block.value[i] = saved + h;
            const double up = loss();
            block.value[i] = saved - h;
            const double down = loss();
            block.value[i] = saved;
            const double numeric = (up - down) / (2.0 * h);
            const double denom = std::max({1.0, std::fabs(analytic[k]), std::fabs(numeric)});
            worst = std::max(worst, std::fabs(analytic[k] - numeric) / denom);
        }
    }
    return worst;
}

}  // namespace goldcast::testing
