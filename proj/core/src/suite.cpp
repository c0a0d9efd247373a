#include "goldcast/baseline/suite.hpp"

#include <cmath>
#include <limits>

#include "goldcast/baseline/feedforward.hpp"
#include "goldcast/baseline/grnn.hpp"
#include "goldcast/baseline/rbf.hpp"

namespace goldcast::baseline {

namespace {

using pipeline::PreparedData;

struct SplitRows {
    std::vector<std::size_t> train, val, test;
};

SplitRows split_rows(const PreparedData& prepared) {
    const std::size_t last_fold = prepared.split.train_folds.size() - 1;
    return {prepared.sample_rows(prepared.split.folds_except(last_fold)),
            prepared.sample_rows(prepared.split.train_folds[last_fold]),
            prepared.sample_rows(prepared.split.test_indices)};
}

double rmse_on(const std::function<double(std::span<const double>)>& predict,
               const PreparedData& prepared, std::span<const std::size_t> rows, int col) {
    double acc = 0.0;
    for (std::size_t r : rows) {
        const double d = predict(prepared.view.x_std.row(r)) - prepared.view.y_std(r, col);
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(rows.size()));
}

pipeline::MetricPair test_metrics(const std::function<double(std::span<const double>)>& predict,
                                  const PreparedData& prepared,
                                  std::span<const std::size_t> rows, int col) {
    std::vector<double> preds, targets;
    preds.reserve(rows.size());
    targets.reserve(rows.size());
    for (std::size_t r : rows) {
        preds.push_back(prepared.y_stats[col].invert(predict(prepared.view.x_std.row(r))));
        targets.push_back(prepared.frame.targets(r, col));
    }
    return pipeline::compute_metrics(preds, targets);
}

void run_timeframe(pipeline::EvalReport& report, const PreparedData& prepared,
                   const std::string& timeframe, const BaselineGrids& grids,
                   std::uint64_t seed) {
    const SplitRows rows = split_rows(prepared);
    const char* comp_names[3] = {"high", "low", "close"};

    for (int col = 0; col < 3; ++col) {
        nn::TabularDataset train_ds{&prepared.view.x_std, &prepared.view.y_std, col, rows.train, {}};
        nn::TabularDataset val_ds{&prepared.view.x_std, &prepared.view.y_std, col, rows.val, {}};

        nn::TrainConfig cfg;
        cfg.max_epochs = grids.epochs;
        cfg.dropout_rate = 0.0;

        // FNN and BPNN: pick the hidden width by validation RMSE.
        for (const bool use_adam : {true, false}) {
            double best = std::numeric_limits<double>::infinity();
            nn::MlpRegressor best_model;
            for (std::size_t h : grids.hidden_grid) {
                cfg.seed = derive_seed(seed, (use_adam ? 1000 : 2000) + h * 10 + col);
                auto model = use_adam ? train_fnn(train_ds, val_ds, {h}, cfg)
                                      : train_bpnn(train_ds, val_ds, {h}, cfg);
                const double v = std::sqrt(nn::mean_eval_loss(model, val_ds));
                if (v < best) {
                    best = v;
                    best_model = std::move(model);
                }
            }
            const auto m = test_metrics(
                [&](std::span<const double> x) { return best_model.predict(x); }, prepared,
                rows.test, col);
            report.rows.push_back(
                {use_adam ? "fnn" : "bpnn", timeframe, comp_names[col], m.rmse, m.mae});
        }

        {
            double best = std::numeric_limits<double>::infinity();
            RbfNetwork best_model;
            for (std::size_t m_centers : grids.rbf_centers_grid) {
                if (m_centers > rows.train.size()) continue;
                for (double bw : grids.bandwidth_grid) {
                    auto model = fit_rbf(prepared.view.x_std, prepared.view.y_std, col,
                                         rows.train, m_centers, bw,
                                         derive_seed(seed, 3000 + m_centers * 100 + col));
                    const double v = rmse_on(
                        [&](std::span<const double> x) { return predict_rbf(model, x); },
                        prepared, rows.val, col);
                    if (v < best) {
                        best = v;
                        best_model = std::move(model);
                    }
                }
            }
            const auto m = test_metrics(
                [&](std::span<const double> x) { return predict_rbf(best_model, x); }, prepared,
                rows.test, col);
            report.rows.push_back({"rbf", timeframe, comp_names[col], m.rmse, m.mae});
        }

        {
            double best = std::numeric_limits<double>::infinity();
            GrnnModel best_model;
            for (double bw : grids.bandwidth_grid) {
                auto model =
                    fit_grnn(prepared.view.x_std, prepared.view.y_std, col, rows.train, bw);
                const double v = rmse_on(
                    [&](std::span<const double> x) { return predict_grnn(model, x); }, prepared,
                    rows.val, col);
                if (v < best) {
                    best = v;
                    best_model = std::move(model);
                }
            }
            const auto m = test_metrics(
                [&](std::span<const double> x) { return predict_grnn(best_model, x); }, prepared,
                rows.test, col);
            report.rows.push_back({"grnn", timeframe, comp_names[col], m.rmse, m.mae});
        }
    }
}

}  // namespace

void append_baseline_rows(pipeline::EvalReport& report, const pipeline::PreparedData& daily,
                          const pipeline::PreparedData& monthly, const BaselineGrids& grids,
                          std::uint64_t seed) {
    run_timeframe(report, daily, "daily", grids, derive_seed(seed, 41));
    run_timeframe(report, monthly, "monthly", grids, derive_seed(seed, 42));
}

}  // namespace goldcast::baseline
