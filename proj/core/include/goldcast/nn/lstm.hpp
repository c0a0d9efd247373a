#pragma once

#include <vector>

#include "goldcast/nn/dense.hpp"
#include "goldcast/nn/train.hpp"

namespace goldcast::nn {

/// One recurrent cell. Gate parameters are fused into 4H-row matrices, row
/// blocks ordered (input, forget, candidate, output):
///   i = sigmoid, f = sigmoid, g = tanh, o = sigmoid
///   c_t = f . c_prev + i . g,   h_t = o . tanh(c_t)
struct LstmCell {
    std::size_t input_size = 0;
    std::size_t hidden_size = 0;
    Matrix w_input;  // 4H x input
    Matrix w_recur;  // 4H x H
    Vector bias;     // 4H

    Matrix grad_w_input;
    Matrix grad_w_recur;
    Vector grad_bias;

    LstmCell() = default;
    LstmCell(std::size_t input, std::size_t hidden, Rng& rng);
    void append_params(ParamList& out);
};

struct LstmStepCache {
    Vector x, h_prev, c_prev;
    Vector gate_i, gate_f, gate_g, gate_o;
    Vector c, tanh_c, h;
};

/// One timestep; fills `cache` (h_t and c_t live in cache.h / cache.c).
void lstm_cell_step(const LstmCell& cell, std::span<const double> x,
                    std::span<const double> h_prev, std::span<const double> c_prev,
                    LstmStepCache& cache);

/// Backward through one timestep. `grad_h` must already combine the upstream
/// and recurrent h-gradients; `grad_c_in` is the recurrent c-gradient.
/// Parameter gradients are accumulated on the cell.
void lstm_cell_backward(LstmCell& cell, const LstmStepCache& cache,
                        std::span<const double> grad_h, std::span<const double> grad_c_in,
                        Vector& grad_x, Vector& grad_h_prev, Vector& grad_c_prev);

struct LstmForwardCache {
    std::vector<std::vector<LstmStepCache>> steps;  // [layer][t]
    std::vector<std::vector<Vector>> drop_scale;    // [boundary][t]; boundary b sits after layer b
    DenseCache head;
    double prediction = 0.0;
};

/// Stacked LSTM with a scalar identity head on the final hidden state.
/// Dropout is applied between recurrent layers only (never on recurrent
/// connections, never after the top layer). Initial h and c are zero.
class LstmStack {
public:
    LstmStack() = default;
    LstmStack(std::size_t n_features, const std::vector<std::size_t>& hidden_sizes,
              std::size_t window, Rng& rng);

    /// Runs rows [start_row, start_row + window) of `x`. Throws NumericError
    /// when that range does not fit the matrix or the feature count differs.
    double forward(const Matrix& x, std::size_t start_row, Mode mode, double dropout_rate,
                   Rng* rng, LstmForwardCache* cache = nullptr) const;

    /// BPTT over the whole window from d(loss)/d(prediction).
    void backward(const LstmForwardCache& cache, double grad_prediction);

    ParamList params();
    std::size_t window() const { return window_; }
    std::size_t n_features() const { return cells_.front().input_size; }
    std::vector<LstmCell>& cells() { return cells_; }
    const std::vector<LstmCell>& cells() const { return cells_; }
    DenseLayer& head() { return head_; }

private:
    std::vector<LstmCell> cells_;
    DenseLayer head_;
    std::size_t window_ = 1;
};

/// Adapter giving LstmStack the model interface used by nn::fit.
class LstmRegressor {
public:
    LstmRegressor() = default;
    LstmRegressor(LstmStack stack) : stack_(std::move(stack)) {}

    double forward_backward(const SequenceDataset& ds, std::size_t i, double dropout,
                            Rng& rng);
    double eval_loss(const SequenceDataset& ds, std::size_t i) const;
    double predict(const Matrix& x, std::size_t start_row) const {
        return stack_.forward(x, start_row, Mode::infer, 0.0, nullptr);
    }

    ParamList params() { return stack_.params(); }
    LstmStack& stack() { return stack_; }
    const LstmStack& stack() const { return stack_; }

private:
    LstmStack stack_;
};

}  // namespace goldcast::nn
