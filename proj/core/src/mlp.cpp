#include "goldcast/nn/mlp.hpp"

#include "goldcast/errors.hpp"

namespace goldcast::nn {

Mlp::Mlp(std::size_t in_dim, const std::vector<std::size_t>& hidden, std::size_t out_dim,
         Rng& rng, double leak) {
    std::size_t prev = in_dim;
    for (std::size_t h : hidden) {
        layers_.emplace_back(prev, h, Activation::leaky_relu, rng, leak);
        prev = h;
    }
    layers_.emplace_back(prev, out_dim, Activation::identity, rng, leak);
}

Vector Mlp::forward(std::span<const double> input, Mode mode, double dropout_rate, Rng* rng,
                    std::vector<DenseCache>* caches) const {
    if (caches) caches->resize(layers_.size());
    Vector cur(input.begin(), input.end());
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const bool is_output = (l + 1 == layers_.size());
        cur = dense_forward(layers_[l], cur, mode, is_output ? 0.0 : dropout_rate, rng,
                            caches ? &(*caches)[l] : nullptr);
    }
    return cur;
}

Vector Mlp::backward(const std::vector<DenseCache>& caches, std::span<const double> grad_output) {
    if (caches.size() != layers_.size())
        throw NumericError("mlp backward: cache/topology mismatch");
    Vector grad(grad_output.begin(), grad_output.end());
    for (std::size_t l = layers_.size(); l-- > 0;)
        grad = dense_backward(layers_[l], caches[l], grad);
    return grad;
}

ParamList Mlp::params() {
    ParamList out;
    for (auto& layer : layers_) layer.append_params(out);
    return out;
}

double MlpRegressor::forward_backward(const TabularDataset& ds, std::size_t i, double dropout,
                                      Rng& rng) {
    const std::size_t row = ds.rows[i];
    ds.probe(row);
    std::vector<DenseCache> caches;
    const double pred = net_.forward(ds.x->row(row), Mode::train, dropout, &rng, &caches)[0];
    const double diff = pred - (*ds.y)(row, ds.target_col);
    const Vector grad{2.0 * diff};
    net_.backward(caches, grad);
    return diff * diff;
}

double MlpRegressor::eval_loss(const TabularDataset& ds, std::size_t i) const {
    const std::size_t row = ds.rows[i];
    ds.probe(row);
    const double diff = predict(ds.x->row(row)) - (*ds.y)(row, ds.target_col);
    return diff * diff;
}

}  // namespace goldcast::nn
