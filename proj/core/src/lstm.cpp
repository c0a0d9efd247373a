#include "goldcast/nn/lstm.hpp"

#include <cmath>
#include <string>

#include "goldcast/errors.hpp"

namespace goldcast::nn {

namespace {
// Row-block offsets into the fused 4H gate layout.
constexpr std::size_t kGateI = 0;
constexpr std::size_t kGateF = 1;
constexpr std::size_t kGateG = 2;
constexpr std::size_t kGateO = 3;

// Gate matrices start well inside the near-linear regime and the forget gate
// opens at 1, keeping the memory path alive from the first step. Regression
// on standardized levels trains poorly from larger inits.
constexpr double kGateInitScale = 0.15;
constexpr double kForgetBiasInit = 1.0;
}  // namespace

LstmCell::LstmCell(std::size_t input, std::size_t hidden, Rng& rng)
    : input_size(input),
      hidden_size(hidden),
      w_input(4 * hidden, input),
      w_recur(4 * hidden, hidden),
      bias(4 * hidden, 0.0),
      grad_w_input(4 * hidden, input),
      grad_w_recur(4 * hidden, hidden),
      grad_bias(4 * hidden, 0.0) {
    const double bx = kGateInitScale * std::sqrt(6.0 / static_cast<double>(input + hidden));
    const double bh = kGateInitScale * std::sqrt(6.0 / static_cast<double>(hidden + hidden));
    for (std::size_t i = 0; i < w_input.size(); ++i) w_input.data()[i] = rng.uniform(-bx, bx);
    for (std::size_t i = 0; i < w_recur.size(); ++i) w_recur.data()[i] = rng.uniform(-bh, bh);
    for (std::size_t u = 0; u < hidden; ++u) bias[kGateF * hidden + u] = kForgetBiasInit;
}

void LstmCell::append_params(ParamList& out) {
    out.push_back({{w_input.data(), w_input.size()}, {grad_w_input.data(), grad_w_input.size()}});
    out.push_back({{w_recur.data(), w_recur.size()}, {grad_w_recur.data(), grad_w_recur.size()}});
    out.push_back({{bias.data(), bias.size()}, {grad_bias.data(), grad_bias.size()}});
}

void lstm_cell_step(const LstmCell& cell, std::span<const double> x,
                    std::span<const double> h_prev, std::span<const double> c_prev,
                    LstmStepCache& cache) {
    const std::size_t h = cell.hidden_size;
    if (x.size() != cell.input_size || h_prev.size() != h || c_prev.size() != h)
        throw NumericError("lstm_cell_step: dimension mismatch");

    Vector pre(4 * h);
    matvec(cell.w_input, x, pre);
    matvec_acc(cell.w_recur, h_prev, pre);
    for (std::size_t i = 0; i < pre.size(); ++i) pre[i] += cell.bias[i];

    cache.x.assign(x.begin(), x.end());
    cache.h_prev.assign(h_prev.begin(), h_prev.end());
    cache.c_prev.assign(c_prev.begin(), c_prev.end());
    cache.gate_i.resize(h);
    cache.gate_f.resize(h);
    cache.gate_g.resize(h);
    cache.gate_o.resize(h);
    cache.c.resize(h);
    cache.tanh_c.resize(h);
    cache.h.resize(h);

    for (std::size_t u = 0; u < h; ++u) {
        const double gi = sigmoid(pre[kGateI * h + u]);
        const double gf = sigmoid(pre[kGateF * h + u]);
        const double gg = std::tanh(pre[kGateG * h + u]);
        const double go = sigmoid(pre[kGateO * h + u]);
        const double c = gf * c_prev[u] + gi * gg;
        const double tc = std::tanh(c);
        cache.gate_i[u] = gi;
        cache.gate_f[u] = gf;
        cache.gate_g[u] = gg;
        cache.gate_o[u] = go;
        cache.c[u] = c;
        cache.tanh_c[u] = tc;
        cache.h[u] = go * tc;
    }
}

void lstm_cell_backward(LstmCell& cell, const LstmStepCache& cache,
                        std::span<const double> grad_h, std::span<const double> grad_c_in,
                        Vector& grad_x, Vector& grad_h_prev, Vector& grad_c_prev) {
    const std::size_t h = cell.hidden_size;
    if (cache.h.size() != h)
        throw NumericError("lstm_cell_backward: stale or missing forward cache");

    Vector grad_pre(4 * h);
    grad_c_prev.assign(h, 0.0);
    for (std::size_t u = 0; u < h; ++u) {
        const double gi = cache.gate_i[u];
        const double gf = cache.gate_f[u];
        const double gg = cache.gate_g[u];
        const double go = cache.gate_o[u];
        const double tc = cache.tanh_c[u];

        const double d_o = grad_h[u] * tc;
        const double d_c = grad_c_in[u] + grad_h[u] * go * (1.0 - tc * tc);
        const double d_i = d_c * gg;
        const double d_f = d_c * cache.c_prev[u];
        const double d_g = d_c * gi;
        grad_c_prev[u] = d_c * gf;

        grad_pre[kGateI * h + u] = d_i * gi * (1.0 - gi);
        grad_pre[kGateF * h + u] = d_f * gf * (1.0 - gf);
        grad_pre[kGateG * h + u] = d_g * (1.0 - gg * gg);
        grad_pre[kGateO * h + u] = d_o * go * (1.0 - go);
    }

    add_outer(cell.grad_w_input, grad_pre, cache.x);
    add_outer(cell.grad_w_recur, grad_pre, cache.h_prev);
    for (std::size_t i = 0; i < grad_pre.size(); ++i) cell.grad_bias[i] += grad_pre[i];

    grad_x.assign(cell.input_size, 0.0);
    matTvec_acc(cell.w_input, grad_pre, grad_x);
    grad_h_prev.assign(h, 0.0);
    matTvec_acc(cell.w_recur, grad_pre, grad_h_prev);
}

LstmStack::LstmStack(std::size_t n_features, const std::vector<std::size_t>& hidden_sizes,
                     std::size_t window, Rng& rng)
    : window_(window) {
    if (hidden_sizes.empty()) throw NumericError("lstm stack: no layers");
    std::size_t in = n_features;
    for (std::size_t h : hidden_sizes) {
        cells_.emplace_back(in, h, rng);
        in = h;
    }
    head_ = DenseLayer(in, 1, Activation::identity, rng);
}

double LstmStack::forward(const Matrix& x, std::size_t start_row, Mode mode,
                          double dropout_rate, Rng* rng, LstmForwardCache* cache) const {
    if (x.cols() != n_features())
        throw NumericError("lstm forward: feature count " + std::to_string(x.cols()) +
                           " != expected " + std::to_string(n_features()));
    if (start_row + window_ > x.rows())
        throw NumericError("lstm forward: window [" + std::to_string(start_row) + ", " +
                           std::to_string(start_row + window_) + ") exceeds " +
                           std::to_string(x.rows()) + " rows");

    const std::size_t n_layers = cells_.size();
    const bool dropping = mode == Mode::train && dropout_rate > 0.0;

    LstmForwardCache local;
    LstmForwardCache& cc = cache ? *cache : local;
    cc.steps.assign(n_layers, {});
    cc.drop_scale.assign(n_layers > 0 ? n_layers - 1 : 0, {});

    std::vector<Vector> seq(window_);
    for (std::size_t t = 0; t < window_; ++t) {
        auto row = x.row(start_row + t);
        seq[t].assign(row.begin(), row.end());
    }

    for (std::size_t l = 0; l < n_layers; ++l) {
        const LstmCell& cell = cells_[l];
        cc.steps[l].resize(window_);
        Vector h(cell.hidden_size, 0.0);
        Vector c(cell.hidden_size, 0.0);
        for (std::size_t t = 0; t < window_; ++t) {
            lstm_cell_step(cell, seq[t], h, c, cc.steps[l][t]);
            h = cc.steps[l][t].h;
            c = cc.steps[l][t].c;
            seq[t] = h;
        }
        if (l + 1 < n_layers && dropping) {
            const double keep = 1.0 - dropout_rate;
            cc.drop_scale[l].resize(window_);
            for (std::size_t t = 0; t < window_; ++t) {
                Vector& scale = cc.drop_scale[l][t];
                scale.resize(cell.hidden_size);
                for (std::size_t u = 0; u < cell.hidden_size; ++u) {
                    scale[u] = rng->bernoulli(dropout_rate) ? 0.0 : 1.0 / keep;
                    seq[t][u] *= scale[u];
                }
            }
        }
    }

    const double pred = dense_forward(head_, seq[window_ - 1], Mode::infer, 0.0, nullptr,
                                      cache ? &cc.head : nullptr)[0];
    if (cache) cc.prediction = pred;
    return pred;
}

void LstmStack::backward(const LstmForwardCache& cache, double grad_prediction) {
    const std::size_t n_layers = cells_.size();
    if (cache.steps.size() != n_layers || cache.steps.back().size() != window_)
        throw NumericError("lstm backward: stale or missing forward cache");

    const Vector grad_head{grad_prediction};
    Vector upstream_last = dense_backward(head_, cache.head, grad_head);

    // Gradients flowing into each timestep's output of the layer being processed.
    std::vector<Vector> upstream(window_);
    for (std::size_t t = 0; t < window_; ++t)
        upstream[t].assign(cells_.back().hidden_size, 0.0);
    upstream[window_ - 1] = std::move(upstream_last);

    Vector grad_x, grad_h_prev, grad_c_prev;
    for (std::size_t l = n_layers; l-- > 0;) {
        LstmCell& cell = cells_[l];
        Vector grad_h_rec(cell.hidden_size, 0.0);
        Vector grad_c_rec(cell.hidden_size, 0.0);
        std::vector<Vector> below(window_);

        for (std::size_t t = window_; t-- > 0;) {
            Vector grad_h = upstream[t];
            for (std::size_t u = 0; u < cell.hidden_size; ++u) grad_h[u] += grad_h_rec[u];
            lstm_cell_backward(cell, cache.steps[l][t], grad_h, grad_c_rec, grad_x,
                               grad_h_prev, grad_c_prev);
            grad_h_rec = std::move(grad_h_prev);
            grad_c_rec = std::move(grad_c_prev);
            below[t] = std::move(grad_x);
        }

        if (l > 0) {
            // The input of layer l at time t was dropout(h of layer l-1 at t).
            if (!cache.drop_scale[l - 1].empty())
                for (std::size_t t = 0; t < window_; ++t)
                    for (std::size_t u = 0; u < below[t].size(); ++u)
                        below[t][u] *= cache.drop_scale[l - 1][t][u];
            upstream = std::move(below);
        }
    }
}

ParamList LstmStack::params() {
    ParamList out;
    for (auto& cell : cells_) cell.append_params(out);
    head_.append_params(out);
    return out;
}

double LstmRegressor::forward_backward(const SequenceDataset& ds, std::size_t i,
                                       double dropout, Rng& rng) {
    const std::size_t start = ds.samples[i];
    ds.probe_window(start);
    LstmForwardCache cache;
    const double pred = stack_.forward(*ds.x, start, Mode::train, dropout, &rng, &cache);
    const double target = (*ds.y)(ds.target_row(start), ds.target_col);
    const double diff = pred - target;
    stack_.backward(cache, 2.0 * diff);
    return diff * diff;
}

double LstmRegressor::eval_loss(const SequenceDataset& ds, std::size_t i) const {
    const std::size_t start = ds.samples[i];
    ds.probe_window(start);
    const double pred = stack_.forward(*ds.x, start, Mode::infer, 0.0, nullptr);
    const double diff = pred - (*ds.y)(ds.target_row(start), ds.target_col);
    return diff * diff;
}

}  // namespace goldcast::nn
