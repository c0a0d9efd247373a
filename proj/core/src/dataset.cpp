#include "goldcast/pipeline/dataset.hpp"

#include <cmath>

#include "goldcast/errors.hpp"
#include "goldcast/nn/loss.hpp"

namespace goldcast::pipeline {

StandardizedView apply_stats(const data::FeatureFrame& frame,
                             const std::vector<data::Standardizer>& x_stats,
                             const std::array<data::Standardizer, 3>& y_stats) {
    const std::size_t rows = frame.features.rows();
    const std::size_t cols = frame.features.cols();
    if (x_stats.size() != cols)
        throw DataError("apply_stats: column count mismatch (" + std::to_string(cols) +
                        " features vs " + std::to_string(x_stats.size()) + " stats)");

    StandardizedView view;
    view.x_std = Matrix(rows + 1, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            view.x_std(r, c) = x_stats[c].transform(frame.features(r, c));
    for (std::size_t c = 0; c < cols; ++c)
        view.x_std(rows, c) = x_stats[c].transform(frame.latest_row[c]);

    view.y_std = Matrix(rows, 3);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < 3; ++c)
            view.y_std(r, c) = y_stats[c].transform(frame.targets(r, c));
    return view;
}

PreparedData prepare(data::FeatureFrame frame, std::size_t window, std::size_t k_folds,
                     double test_fraction) {
    if (window < 1) throw NumericError("prepare: window must be >= 1");
    const std::size_t rows = frame.features.rows();
    if (rows < window)
        throw DataError("prepare: only " + std::to_string(rows) +
                        " usable rows for a lookback window of " + std::to_string(window));
    const std::size_t n_samples = rows - window + 1;

    PreparedData prepared;
    prepared.window = window;
    prepared.split = data::make_splits(n_samples, k_folds, test_fraction, window);

    const std::size_t first_test = prepared.split.test_indices.front();
    prepared.fit_rows = (first_test - 1) + window;

    prepared.x_stats.reserve(frame.features.cols());
    for (std::size_t c = 0; c < frame.features.cols(); ++c) {
        std::vector<double> col(prepared.fit_rows);
        for (std::size_t r = 0; r < prepared.fit_rows; ++r) col[r] = frame.features(r, c);
        try {
            prepared.x_stats.push_back(data::fit_standardizer(col));
        } catch (const NumericError&) {
            throw NumericError("prepare: feature column '" + frame.columns[c] +
                               "' is constant over the fitting window");
        }
    }
    for (std::size_t c = 0; c < 3; ++c) {
        std::vector<double> col(prepared.fit_rows);
        for (std::size_t r = 0; r < prepared.fit_rows; ++r) col[r] = frame.targets(r, c);
        prepared.y_stats[c] = data::fit_standardizer(col);
    }

    prepared.view = apply_stats(frame, prepared.x_stats, prepared.y_stats);
    prepared.frame = std::move(frame);
    return prepared;
}

nn::SequenceDataset PreparedData::sequence_dataset(std::vector<std::size_t> samples,
                                                   int target_col,
                                                   std::function<void(std::size_t)> probe) const {
    nn::SequenceDataset ds;
    ds.x = &view.x_std;
    ds.y = &view.y_std;
    ds.target_col = target_col;
    ds.window = window;
    ds.samples = std::move(samples);
    ds.row_probe = std::move(probe);
    return ds;
}

std::vector<std::size_t> PreparedData::sample_rows(std::span<const std::size_t> samples) const {
    std::vector<std::size_t> rows;
    rows.reserve(samples.size());
    for (std::size_t s : samples) rows.push_back(target_row(s));
    return rows;
}

nn::TabularDataset PreparedData::tabular_dataset(std::vector<std::size_t> samples,
                                                 int target_col,
                                                 std::function<void(std::size_t)> probe) const {
    nn::TabularDataset ds;
    ds.x = &view.x_std;
    ds.y = &view.y_std;
    ds.target_col = target_col;
    ds.rows = sample_rows(samples);
    ds.row_probe = std::move(probe);
    return ds;
}

double persistence_rmse(const PreparedData& prepared, std::span<const std::size_t> samples,
                        int component) {
    // feature columns start [high, low, close, ...] in target order
    double acc = 0.0;
    for (std::size_t s : samples) {
        const std::size_t r = prepared.target_row(s);
        const double d =
            prepared.frame.targets(r, component) - prepared.frame.features(r, component);
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(samples.size()));
}

MetricPair compute_metrics(std::span<const double> predictions,
                           std::span<const double> targets) {
    return {nn::rmse(predictions, targets), nn::mae(predictions, targets)};
}

}  // namespace goldcast::pipeline
