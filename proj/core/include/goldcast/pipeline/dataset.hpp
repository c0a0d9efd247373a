#pragma once

#include <array>

#include "goldcast/data/features.hpp"
#include "goldcast/data/splits.hpp"
#include "goldcast/data/standardize.hpp"
#include "goldcast/nn/train.hpp"

namespace goldcast::pipeline {

/// Feature/target matrices standardized with externally supplied statistics.
/// x_std carries one extra final row (the latest bar) so the out-of-sample
/// prediction window can end on it; training windows never reach that row.
struct StandardizedView {
    Matrix x_std;  // frame rows + 1
    Matrix y_std;  // frame rows
};

StandardizedView apply_stats(const data::FeatureFrame& frame,
                             const std::vector<data::Standardizer>& x_stats,
                             const std::array<data::Standardizer, 3>& y_stats);

/// One frequency's ready-to-train bundle. Sample s covers feature rows
/// [s, s+window) and predicts target row s+window-1. Standardization is
/// fitted on rows [0, fit_rows) only — exactly the rows reachable from
/// non-test samples — and then applied everywhere.
struct PreparedData {
    data::FeatureFrame frame;
    std::size_t window = 1;
    data::DatasetSplit split;
    StandardizedView view;
    std::vector<data::Standardizer> x_stats;
    std::array<data::Standardizer, 3> y_stats;
    std::size_t fit_rows = 0;

    std::size_t n_samples() const { return split.n_samples(); }
    std::size_t target_row(std::size_t sample) const { return sample + window - 1; }

    nn::SequenceDataset sequence_dataset(std::vector<std::size_t> samples, int target_col,
                                         std::function<void(std::size_t)> probe = {}) const;
    nn::TabularDataset tabular_dataset(std::vector<std::size_t> samples, int target_col,
                                       std::function<void(std::size_t)> probe = {}) const;
    /// Tabular rows matching a sample set (row = sample's last window row).
    std::vector<std::size_t> sample_rows(std::span<const std::size_t> samples) const;
};

PreparedData prepare(data::FeatureFrame frame, std::size_t window, std::size_t k_folds,
                     double test_fraction);

/// RMSE of "tomorrow equals today" on the given samples, in price units.
double persistence_rmse(const PreparedData& prepared, std::span<const std::size_t> samples,
                        int component);

struct MetricPair {
    double rmse = 0.0;
    double mae = 0.0;
};

MetricPair compute_metrics(std::span<const double> predictions,
                           std::span<const double> targets);

}  // namespace goldcast::pipeline
