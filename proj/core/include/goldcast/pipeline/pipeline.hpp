#pragma once

#include <array>
#include <map>
#include <string>

#include "goldcast/gwo/gwo.hpp"
#include "goldcast/nn/lstm.hpp"
#include "goldcast/nn/mlp.hpp"
#include "goldcast/pipeline/dataset.hpp"
#include "goldcast/trading/backtest.hpp"

namespace goldcast::pipeline {

enum class MainNet { daily_lstm, monthly_lstm, fusion_mlp };
enum class Component { high, low, close };

/// One of the nine subnetworks (three main networks x three price components).
struct SubnetworkId {
    MainNet net;
    Component component;

    std::size_t index() const {
        return static_cast<std::size_t>(net) * 3 + static_cast<std::size_t>(component);
    }
    std::string name() const;
    static SubnetworkId from_index(std::size_t i);
};

inline constexpr std::size_t kNumSubnets = 9;

struct PipelineConfig {
    std::size_t daily_window = 30;
    std::size_t monthly_window = 12;
    std::size_t k_folds = 4;
    double test_fraction = 0.10;
    nn::TrainConfig train;           // final training budget
    std::size_t search_epochs = 8;   // reduced epoch budget inside GWO fitness
    gwo::GwoConfig gwo;              // paper defaults: 5 wolves, 10 iterations, [2, 1024]
    double fusion_val_fraction = 0.25;
    std::uint64_t master_seed = 42;
    bool parallel_searches = false;  // run the nine GWO searches concurrently

    // Test instrumentation: observe every standardized row index read while
    // fitting stats, searching, or training (never set in production runs;
    // requires parallel_searches = false).
    std::function<void(std::size_t)> daily_row_probe;
    std::function<void(std::size_t)> monthly_row_probe;
};

struct ArchitectureSet {
    std::array<gwo::NetworkArch, kNumSubnets> archs{};
    std::array<double, kNumSubnets> best_fitness{};  // validation RMSE, price units
    std::array<gwo::ConvergenceTrace, kNumSubnets> traces{};
};

struct TrainedModels {
    std::array<gwo::NetworkArch, kNumSubnets> archs{};
    std::size_t daily_window = 0;
    std::size_t monthly_window = 0;
    std::vector<std::string> daily_columns, monthly_columns;
    std::vector<data::Standardizer> daily_x_stats, monthly_x_stats;
    std::array<data::Standardizer, 3> daily_y_stats{}, monthly_y_stats{};
    std::array<nn::LstmRegressor, 3> daily_nets;    // indexed by Component
    std::array<nn::LstmRegressor, 3> monthly_nets;
    std::array<nn::MlpRegressor, 3> fusion_nets;
};

struct ForecastTriple {
    enum class Horizon { next_day, next_month };
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    Horizon horizon = Horizon::next_day;
};

struct EvalRow {
    std::string model;      // "lstm_mlp" for the main pipeline
    std::string timeframe;  // "daily" | "monthly"
    std::string component;  // "high" | "low" | "close"
    double rmse = 0.0;
    double mae = 0.0;
};

struct EvalReport {
    std::vector<EvalRow> rows;
    const EvalRow* find(const std::string& model, const std::string& timeframe,
                        const std::string& component) const;
};

/// Runs the nine GWO searches. LSTM subnets are searched directly; the three
/// fusion searches run on a fusion dataset built from provisional
/// (search-budget) LSTMs, since fusion inputs are LSTM forecasts.
ArchitectureSet optimize_architectures(const PreparedData& daily, const PreparedData& monthly,
                                       const PipelineConfig& config);

/// Trains the six LSTMs on folds 1..k-1 (fold k is the early-stopping and
/// fitness fold) and the three fusion MLPs on the LSTMs' validation-period
/// forecasts, at the full epoch budget.
TrainedModels train_all(const PreparedData& daily, const PreparedData& monthly,
                        const ArchitectureSet& archs, const PipelineConfig& config);

/// Monthly forecast (standardized monthly units) keyed by the month it is
/// for; entry for month M is produced from monthly windows ending before M.
std::map<YearMonth, std::array<double, 3>> monthly_forecast_map(const TrainedModels& models,
                                                                const PreparedData& monthly);

/// Fusion forecasts in price units for the given daily samples, dated by each
/// sample's target date. Samples whose target month has no monthly forecast
/// are skipped (kept_samples reports the survivors).
std::vector<trading::Forecast> fusion_forecasts(
    const TrainedModels& models, const PreparedData& daily,
    const std::map<YearMonth, std::array<double, 3>>& monthly_map,
    std::span<const std::size_t> samples, std::vector<std::size_t>* kept_samples = nullptr);

/// Per-component daily and monthly RMSE/MAE on the untouched test blocks,
/// in price units.
EvalReport evaluate(const TrainedModels& models, const PreparedData& daily,
                    const PreparedData& monthly);

/// Final next-day triple (fusion output) plus the next-month triple (monthly
/// LSTM output), both destandardized. Throws DataError on insufficient history.
std::pair<ForecastTriple, ForecastTriple> predict_next_day(const TrainedModels& models,
                                                           const data::FeatureFrame& daily,
                                                           const data::FeatureFrame& monthly);

void write_eval_csv(const EvalReport& report, const std::string& path,
                    bool include_model_column);

/// Seed streams derived from the master seed; fixed assignments keep every
/// stage reproducible and independent.
std::uint64_t gwo_seed(const PipelineConfig& config, std::size_t subnet_index);
std::uint64_t train_seed(const PipelineConfig& config, std::size_t subnet_index);
std::uint64_t provisional_seed(const PipelineConfig& config, std::size_t subnet_index);

}  // namespace goldcast::pipeline
