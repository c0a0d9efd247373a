#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>

#include "goldcast/errors.hpp"
#include "goldcast/matrix.hpp"
#include "goldcast/nn/adam.hpp"
#include "goldcast/nn/params.hpp"
#include "goldcast/rng.hpp"

namespace goldcast::nn {

struct TrainConfig {
    std::size_t max_epochs = 100;
    std::size_t patience = 5;
    double dropout_rate = 0.01;
    std::size_t batch_size = 32;
    std::uint64_t seed = 0;
    AdamConfig adam;
    enum class Optimizer { adam, sgd };
    Optimizer optimizer = Optimizer::adam;
};

struct TrainHistory {
    std::vector<double> train_loss;
    std::vector<double> val_loss;
    std::size_t best_epoch = 0;  // 1-based; 0 when no epochs ran
};

/// Tracks the best validation loss and keeps a snapshot of the weights that
/// produced it. Training stops once `patience` consecutive epochs fail to
/// improve on the best.
class EarlyStopper {
public:
    explicit EarlyStopper(std::size_t patience) : patience_(patience) {
        if (patience_ < 1) throw NumericError("early stopping: patience must be >= 1");
    }

    /// Returns true when training should stop after this epoch.
    bool observe(std::size_t epoch, double val_loss, const ParamList& params) {
        if (val_loss < best_) {
            best_ = val_loss;
            best_epoch_ = epoch;
            stale_ = 0;
            best_params_ = snapshot_values(params);
        } else {
            ++stale_;
        }
        return stale_ >= patience_;
    }

    void restore_best(const ParamList& params) const {
        if (!best_params_.empty()) restore_values(params, best_params_);
    }

    double best_loss() const { return best_; }
    std::size_t best_epoch() const { return best_epoch_; }

private:
    std::size_t patience_;
    double best_ = std::numeric_limits<double>::infinity();
    std::size_t best_epoch_ = 0;
    std::size_t stale_ = 0;
    std::vector<double> best_params_;
};

/// Row-sample regression view over a standardized feature matrix.
struct TabularDataset {
    const Matrix* x = nullptr;
    const Matrix* y = nullptr;
    int target_col = 0;
    std::vector<std::size_t> rows;
    std::function<void(std::size_t)> row_probe;  // access-trace hook for tests

    std::size_t size() const { return rows.size(); }
    void probe(std::size_t row) const {
        if (row_probe) row_probe(row);
    }
};

/// Sliding-window view: sample s covers feature rows [start, start+window) and
/// predicts targets(start+window-1, target_col).
struct SequenceDataset {
    const Matrix* x = nullptr;
    const Matrix* y = nullptr;
    int target_col = 0;
    std::size_t window = 1;
    std::vector<std::size_t> samples;  // window start rows
    std::function<void(std::size_t)> row_probe;

    std::size_t size() const { return samples.size(); }
    std::size_t target_row(std::size_t sample_start) const { return sample_start + window - 1; }
    void probe_window(std::size_t sample_start) const {
        if (row_probe)
            for (std::size_t r = sample_start; r < sample_start + window; ++r) row_probe(r);
    }
};

template <class Model, class Dataset>
double mean_eval_loss(const Model& model, const Dataset& ds) {
    double acc = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) acc += model.eval_loss(ds, i);
    return acc / static_cast<double>(ds.size());
}

/// Mini-batch training with Adam (or plain SGD) and early stopping; restores
/// the weights from the best-validation epoch. Deterministic given cfg.seed.
template <class Model, class Dataset>
TrainHistory fit(Model& model, const Dataset& train, const Dataset& val,
                 const TrainConfig& cfg) {
    if (train.size() == 0 || val.size() == 0)
        throw NumericError("fit: empty train or validation set");

    TrainHistory history;
    if (cfg.max_epochs == 0) return history;

    ParamList params = model.params();
    Adam adam(cfg.adam, param_count(params));
    GradientDescent sgd(cfg.adam.learning_rate);
    EarlyStopper stopper(cfg.patience);
    Rng rng(cfg.seed);

    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t batch = cfg.batch_size == 0 ? train.size() : cfg.batch_size;

    for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        // Fisher-Yates via our own draws, so the stream is library-independent.
        for (std::size_t i = order.size(); i-- > 1;)
            std::swap(order[i], order[rng.below(i + 1)]);

        double epoch_loss = 0.0;
        for (std::size_t pos = 0; pos < order.size(); pos += batch) {
            const std::size_t count = std::min(batch, order.size() - pos);
            zero_grads(params);
            double batch_loss = 0.0;
            for (std::size_t j = 0; j < count; ++j)
                batch_loss +=
                    model.forward_backward(train, order[pos + j], cfg.dropout_rate, rng);
            scale_grads(params, 1.0 / static_cast<double>(count));
            if (cfg.optimizer == TrainConfig::Optimizer::adam)
                adam.step(params);
            else
                sgd.step(params);
            epoch_loss += batch_loss;
        }
        epoch_loss /= static_cast<double>(train.size());
        const double v_loss = mean_eval_loss(model, val);
        if (!std::isfinite(epoch_loss) || !std::isfinite(v_loss))
            throw NumericError("fit: non-finite loss at epoch " + std::to_string(epoch));
        history.train_loss.push_back(epoch_loss);
        history.val_loss.push_back(v_loss);
        if (stopper.observe(epoch, v_loss, params)) break;
    }

    stopper.restore_best(params);
    history.best_epoch = stopper.best_epoch();
    return history;
}

}  // namespace goldcast::nn
