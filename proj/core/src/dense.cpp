#include "goldcast/nn/dense.hpp"

#include <cmath>
#include <string>

#include "goldcast/errors.hpp"

namespace goldcast::nn {

DenseLayer::DenseLayer(std::size_t in_dim, std::size_t out_dim, Activation act, Rng& rng,
                       double leak_coeff)
    : weights(out_dim, in_dim),
      biases(out_dim, 0.0),
      activation(act),
      leak(leak_coeff),
      grad_weights(out_dim, in_dim),
      grad_biases(out_dim, 0.0) {
    const double bound = std::sqrt(6.0 / static_cast<double>(in_dim + out_dim));
    for (std::size_t i = 0; i < weights.size(); ++i)
        weights.data()[i] = rng.uniform(-bound, bound);
}

void DenseLayer::append_params(ParamList& out) {
    out.push_back({{weights.data(), weights.size()}, {grad_weights.data(), grad_weights.size()}});
    out.push_back({{biases.data(), biases.size()}, {grad_biases.data(), grad_biases.size()}});
}

Vector dense_forward(const DenseLayer& layer, std::span<const double> input, Mode mode,
                     double dropout_rate, Rng* rng, DenseCache* cache) {
    if (input.size() != layer.in_dim())
        throw NumericError("dense_forward: input size " + std::to_string(input.size()) +
                           " != layer in-dim " + std::to_string(layer.in_dim()));

    Vector preact(layer.out_dim());
    matvec(layer.weights, input, preact);
    for (std::size_t i = 0; i < preact.size(); ++i) preact[i] += layer.biases[i];

    Vector out(layer.out_dim());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = apply_activation(layer.activation, preact[i], layer.leak);

    Vector drop_scale;
    if (mode == Mode::train && dropout_rate > 0.0) {
        const double keep = 1.0 - dropout_rate;
        drop_scale.resize(out.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            drop_scale[i] = rng->bernoulli(dropout_rate) ? 0.0 : 1.0 / keep;
            out[i] *= drop_scale[i];
        }
    }

    if (cache) {
        cache->input.assign(input.begin(), input.end());
        cache->preact = preact;
        cache->output = out;
        cache->drop_scale = std::move(drop_scale);
    }
    return out;
}

Vector dense_backward(DenseLayer& layer, const DenseCache& cache,
                      std::span<const double> grad_output) {
    if (grad_output.size() != layer.out_dim())
        throw NumericError("dense_backward: gradient size mismatch");
    if (cache.input.size() != layer.in_dim())
        throw NumericError("dense_backward: stale or missing forward cache");

    Vector grad_pre(layer.out_dim());
    for (std::size_t i = 0; i < grad_pre.size(); ++i) {
        double g = grad_output[i];
        if (!cache.drop_scale.empty()) g *= cache.drop_scale[i];
        grad_pre[i] = g * activation_grad(layer.activation, cache.preact[i], layer.leak);
    }

    add_outer(layer.grad_weights, grad_pre, cache.input);
    for (std::size_t i = 0; i < grad_pre.size(); ++i) layer.grad_biases[i] += grad_pre[i];

    Vector grad_input(layer.in_dim(), 0.0);
    matTvec_acc(layer.weights, grad_pre, grad_input);
    return grad_input;
}

}  // namespace goldcast::nn
