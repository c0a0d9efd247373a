#include "goldcast/pipeline/pipeline.hpp"

#include <cmath>
#include <future>
#include <limits>

#include "goldcast/errors.hpp"
#include "goldcast/textio.hpp"

namespace goldcast::pipeline {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const char* component_name(Component c) {
    switch (c) {
        case Component::high: return "high";
        case Component::low: return "low";
        case Component::close: return "close";
    }
    return "?";
}

const char* net_name(MainNet n) {
    switch (n) {
        case MainNet::daily_lstm: return "daily_lstm";
        case MainNet::monthly_lstm: return "monthly_lstm";
        case MainNet::fusion_mlp: return "fusion_mlp";
    }
    return "?";
}

std::uint64_t arch_key(const gwo::NetworkArch& arch) {
    return (static_cast<std::uint64_t>(arch.layer1) << 22) |
           (static_cast<std::uint64_t>(arch.layer2) << 11) |
           static_cast<std::uint64_t>(arch.layer3);
}

void run_tasks(bool parallel, std::vector<std::function<void()>> tasks) {
    if (parallel && tasks.size() > 1) {
        std::vector<std::future<void>> futures;
        futures.reserve(tasks.size());
        for (auto& task : tasks)
            futures.push_back(std::async(std::launch::async, std::move(task)));
        for (auto& f : futures) f.get();
    } else {
        for (auto& task : tasks) task();
    }
}

nn::TrainConfig search_config(const PipelineConfig& config, std::uint64_t seed) {
    nn::TrainConfig cfg = config.train;
    cfg.max_epochs = config.search_epochs;
    cfg.seed = seed;
    return cfg;
}

struct LstmFitResult {
    nn::LstmRegressor model;
    double val_rmse_usd = 0.0;
};

/// Trains one LSTM subnetwork on folds 1..k-1, early-stopping on fold k, and
/// reports the fold-k RMSE in price units.
LstmFitResult fit_lstm_subnet(const PreparedData& prepared, Component component,
                              const gwo::NetworkArch& arch, nn::TrainConfig cfg,
                              const std::function<void(std::size_t)>& probe) {
    const int col = static_cast<int>(component);
    const std::size_t last_fold = prepared.split.train_folds.size() - 1;
    auto train_ds = prepared.sequence_dataset(prepared.split.folds_except(last_fold), col, probe);
    auto val_ds = prepared.sequence_dataset(prepared.split.train_folds[last_fold], col, probe);

    Rng init_rng(derive_seed(cfg.seed, 7));
    nn::LstmRegressor model(
        nn::LstmStack(prepared.view.x_std.cols(), arch.sizes(), prepared.window, init_rng));
    nn::fit(model, train_ds, val_ds, cfg);

    const double rmse_std = std::sqrt(nn::mean_eval_loss(model, val_ds));
    return {std::move(model), rmse_std * prepared.y_stats[col].std};
}

/// Inputs are the six component forecasts (daily triple then monthly triple),
/// targets the daily standardized next-day triple.
struct FusionData {
    Matrix x;  // n x 6
    Matrix y;  // n x 3
    std::vector<std::size_t> daily_samples;
    std::vector<std::size_t> train_rows, val_rows;
};

FusionData build_fusion_data(const std::array<nn::LstmRegressor, 3>& daily_nets,
                             const PreparedData& daily,
                             const std::map<YearMonth, std::array<double, 3>>& monthly_map,
                             std::span<const std::size_t> samples, double val_fraction,
                             const std::function<void(std::size_t)>& probe) {
    std::vector<std::array<double, 6>> rows;
    std::vector<std::array<double, 3>> targets;
    std::vector<std::size_t> kept;
    for (std::size_t s : samples) {
        const std::size_t tr = daily.target_row(s);
        const auto it = monthly_map.find(YearMonth::of(daily.frame.target_dates[tr]));
        if (it == monthly_map.end()) continue;  // month not forecastable yet
        if (probe)
            for (std::size_t r = s; r <= tr; ++r) probe(r);
        std::array<double, 6> x{};
        for (std::size_t c = 0; c < 3; ++c) x[c] = daily_nets[c].predict(daily.view.x_std, s);
        for (std::size_t c = 0; c < 3; ++c) x[3 + c] = it->second[c];
        rows.push_back(x);
        targets.push_back({daily.view.y_std(tr, 0), daily.view.y_std(tr, 1),
                           daily.view.y_std(tr, 2)});
        kept.push_back(s);
    }
    if (kept.size() < 8)
        throw DataError("fusion: only " + std::to_string(kept.size()) +
                        " usable fusion rows; not enough monthly history");

    FusionData data;
    data.x = Matrix(rows.size(), 6);
    data.y = Matrix(rows.size(), 3);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t c = 0; c < 6; ++c) data.x(i, c) = rows[i][c];
        for (std::size_t c = 0; c < 3; ++c) data.y(i, c) = targets[i][c];
    }
    data.daily_samples = std::move(kept);

    const auto n_val = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(static_cast<double>(rows.size()) * val_fraction)));
    const std::size_t n_train = rows.size() - n_val;
    if (n_train == 0) throw DataError("fusion: no training rows left after validation split");
    for (std::size_t i = 0; i < n_train; ++i) data.train_rows.push_back(i);
    for (std::size_t i = n_train; i < rows.size(); ++i) data.val_rows.push_back(i);
    return data;
}

struct MlpFitResult {
    nn::MlpRegressor model;
    double val_rmse_usd = 0.0;
};

MlpFitResult fit_fusion_subnet(const FusionData& data, const PreparedData& daily,
                               Component component, const gwo::NetworkArch& arch,
                               nn::TrainConfig cfg) {
    const int col = static_cast<int>(component);
    nn::TabularDataset train_ds{&data.x, &data.y, col, data.train_rows, {}};
    nn::TabularDataset val_ds{&data.x, &data.y, col, data.val_rows, {}};

    Rng init_rng(derive_seed(cfg.seed, 7));
    nn::MlpRegressor model(nn::Mlp(6, arch.sizes(), 1, init_rng));
    nn::fit(model, train_ds, val_ds, cfg);

    const double rmse_std = std::sqrt(nn::mean_eval_loss(model, val_ds));
    return {std::move(model), rmse_std * daily.y_stats[col].std};
}

std::map<YearMonth, std::array<double, 3>> build_monthly_map(
    const std::array<nn::LstmRegressor, 3>& monthly_nets, const PreparedData& monthly,
    std::span<const std::size_t> samples, bool with_latest,
    const std::function<void(std::size_t)>& probe) {
    std::map<YearMonth, std::array<double, 3>> map;
    for (std::size_t s : samples) {
        if (probe)
            for (std::size_t r = s; r <= monthly.target_row(s); ++r) probe(r);
        std::array<double, 3> triple{};
        for (std::size_t c = 0; c < 3; ++c)
            triple[c] = monthly_nets[c].predict(monthly.view.x_std, s);
        map[YearMonth::of(monthly.frame.target_dates[monthly.target_row(s)])] = triple;
    }
    if (with_latest) {
        // Window ending at the latest bar forecasts the month after it.
        const std::size_t start = monthly.view.x_std.rows() - monthly.window;
        std::array<double, 3> triple{};
        for (std::size_t c = 0; c < 3; ++c)
            triple[c] = monthly_nets[c].predict(monthly.view.x_std, start);
        map[YearMonth::of(monthly.frame.latest_date).next()] = triple;
    }
    return map;
}

}  // namespace

std::string SubnetworkId::name() const {
    return std::string(net_name(net)) + "." + component_name(component);
}

SubnetworkId SubnetworkId::from_index(std::size_t i) {
    return {static_cast<MainNet>(i / 3), static_cast<Component>(i % 3)};
}

std::uint64_t gwo_seed(const PipelineConfig& config, std::size_t subnet_index) {
    return derive_seed(config.master_seed, 100 + subnet_index);
}
std::uint64_t train_seed(const PipelineConfig& config, std::size_t subnet_index) {
    return derive_seed(config.master_seed, 200 + subnet_index);
}
std::uint64_t provisional_seed(const PipelineConfig& config, std::size_t subnet_index) {
    return derive_seed(config.master_seed, 300 + subnet_index);
}

ArchitectureSet optimize_architectures(const PreparedData& daily, const PreparedData& monthly,
                                       const PipelineConfig& config) {
    ArchitectureSet result;

    // six LSTM searches
    std::vector<std::function<void()>> searches;
    for (std::size_t idx = 0; idx < 6; ++idx) {
        searches.push_back([&, idx] {
            const SubnetworkId id = SubnetworkId::from_index(idx);
            const PreparedData& prepared = id.net == MainNet::daily_lstm ? daily : monthly;
            gwo::GwoConfig gcfg = config.gwo;
            gcfg.seed = gwo_seed(config, idx);
            const auto& probe = id.net == MainNet::daily_lstm ? config.daily_row_probe
                                                              : config.monthly_row_probe;
            const auto fitness = [&](const gwo::NetworkArch& arch) -> double {
                try {
                    return fit_lstm_subnet(
                               prepared, id.component, arch,
                               search_config(config, derive_seed(gcfg.seed, arch_key(arch))),
                               probe)
                        .val_rmse_usd;
                } catch (const NumericError&) {
                    return kInf;
                }
            };
            const auto run = gwo::gwo_minimize(fitness, gcfg);
            result.archs[idx] = run.best_arch;
            result.best_fitness[idx] = run.best_fitness;
            result.traces[idx] = run.trace;
        });
    }
    run_tasks(config.parallel_searches, std::move(searches));

    // provisional LSTMs at the search budget feed the fusion searches
    std::array<nn::LstmRegressor, 3> daily_nets, monthly_nets;
    std::vector<std::function<void()>> provisional;
    for (std::size_t idx = 0; idx < 6; ++idx) {
        provisional.push_back([&, idx] {
            const SubnetworkId id = SubnetworkId::from_index(idx);
            const PreparedData& prepared = id.net == MainNet::daily_lstm ? daily : monthly;
            const auto& probe = id.net == MainNet::daily_lstm ? config.daily_row_probe
                                                              : config.monthly_row_probe;
            auto fitted = fit_lstm_subnet(
                prepared, id.component, result.archs[idx],
                search_config(config, provisional_seed(config, idx)), probe);
            auto& slot = id.net == MainNet::daily_lstm ? daily_nets : monthly_nets;
            slot[static_cast<std::size_t>(id.component)] = std::move(fitted.model);
        });
    }
    run_tasks(config.parallel_searches, std::move(provisional));

    const auto monthly_map = build_monthly_map(monthly_nets, monthly,
                                               monthly.split.fold_union(), false,
                                               config.monthly_row_probe);
    const std::size_t last_fold = daily.split.train_folds.size() - 1;
    const auto fusion_data =
        build_fusion_data(daily_nets, daily, monthly_map, daily.split.train_folds[last_fold],
                          config.fusion_val_fraction, config.daily_row_probe);

    std::vector<std::function<void()>> fusion_searches;
    for (std::size_t idx = 6; idx < kNumSubnets; ++idx) {
        fusion_searches.push_back([&, idx] {
            const SubnetworkId id = SubnetworkId::from_index(idx);
            gwo::GwoConfig gcfg = config.gwo;
            gcfg.seed = gwo_seed(config, idx);
            const auto fitness = [&](const gwo::NetworkArch& arch) -> double {
                try {
                    return fit_fusion_subnet(
                               fusion_data, daily, id.component, arch,
                               search_config(config, derive_seed(gcfg.seed, arch_key(arch))))
                        .val_rmse_usd;
                } catch (const NumericError&) {
                    return kInf;
                }
            };
            const auto run = gwo::gwo_minimize(fitness, gcfg);
            result.archs[idx] = run.best_arch;
            result.best_fitness[idx] = run.best_fitness;
            result.traces[idx] = run.trace;
        });
    }
    run_tasks(config.parallel_searches, std::move(fusion_searches));
    return result;
}

TrainedModels train_all(const PreparedData& daily, const PreparedData& monthly,
                        const ArchitectureSet& archs, const PipelineConfig& config) {
    TrainedModels models;
    models.archs = archs.archs;
    models.daily_window = daily.window;
    models.monthly_window = monthly.window;
    models.daily_columns = daily.frame.columns;
    models.monthly_columns = monthly.frame.columns;
    models.daily_x_stats = daily.x_stats;
    models.monthly_x_stats = monthly.x_stats;
    models.daily_y_stats = daily.y_stats;
    models.monthly_y_stats = monthly.y_stats;

    // Each subnetwork trains with the exact seed its winning fitness evaluation
    // used. The final budget extends the search budget, so the restored
    // best-validation weights can only match or improve the searched fitness.
    std::vector<std::function<void()>> tasks;
    for (std::size_t idx = 0; idx < 6; ++idx) {
        tasks.push_back([&, idx] {
            const SubnetworkId id = SubnetworkId::from_index(idx);
            const PreparedData& prepared = id.net == MainNet::daily_lstm ? daily : monthly;
            nn::TrainConfig cfg = config.train;
            cfg.seed = derive_seed(gwo_seed(config, idx), arch_key(archs.archs[idx]));
            const auto& probe = id.net == MainNet::daily_lstm ? config.daily_row_probe
                                                              : config.monthly_row_probe;
            auto fitted = fit_lstm_subnet(prepared, id.component, archs.archs[idx], cfg, probe);
            auto& slot = id.net == MainNet::daily_lstm ? models.daily_nets : models.monthly_nets;
            slot[static_cast<std::size_t>(id.component)] = std::move(fitted.model);
        });
    }
    run_tasks(config.parallel_searches, std::move(tasks));

    const auto monthly_map = build_monthly_map(models.monthly_nets, monthly,
                                               monthly.split.fold_union(), false,
                                               config.monthly_row_probe);
    const std::size_t last_fold = daily.split.train_folds.size() - 1;
    const auto fusion_data = build_fusion_data(models.daily_nets, daily, monthly_map,
                                               daily.split.train_folds[last_fold],
                                               config.fusion_val_fraction,
                                               config.daily_row_probe);

    std::vector<std::function<void()>> fusion_tasks;
    for (std::size_t idx = 6; idx < kNumSubnets; ++idx) {
        fusion_tasks.push_back([&, idx] {
            const SubnetworkId id = SubnetworkId::from_index(idx);
            nn::TrainConfig cfg = config.train;
            cfg.seed = train_seed(config, idx);
            auto fitted = fit_fusion_subnet(fusion_data, daily, id.component, archs.archs[idx], cfg);
            models.fusion_nets[static_cast<std::size_t>(id.component)] = std::move(fitted.model);
        });
    }
    run_tasks(config.parallel_searches, std::move(fusion_tasks));
    return models;
}

std::map<YearMonth, std::array<double, 3>> monthly_forecast_map(const TrainedModels& models,
                                                                const PreparedData& monthly) {
    std::vector<std::size_t> all(monthly.n_samples());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return build_monthly_map(models.monthly_nets, monthly, all, true, {});
}

std::vector<trading::Forecast> fusion_forecasts(
    const TrainedModels& models, const PreparedData& daily,
    const std::map<YearMonth, std::array<double, 3>>& monthly_map,
    std::span<const std::size_t> samples, std::vector<std::size_t>* kept_samples) {
    std::vector<trading::Forecast> out;
    if (kept_samples) kept_samples->clear();
    for (std::size_t s : samples) {
        const std::size_t tr = daily.target_row(s);
        const auto it = monthly_map.find(YearMonth::of(daily.frame.target_dates[tr]));
        if (it == monthly_map.end()) continue;
        std::array<double, 6> x{};
        for (std::size_t c = 0; c < 3; ++c)
            x[c] = models.daily_nets[c].predict(daily.view.x_std, s);
        for (std::size_t c = 0; c < 3; ++c) x[3 + c] = it->second[c];

        trading::Forecast fc;
        fc.date = daily.frame.target_dates[tr];
        fc.high = models.daily_y_stats[0].invert(models.fusion_nets[0].predict(x));
        fc.low = models.daily_y_stats[1].invert(models.fusion_nets[1].predict(x));
        fc.close = models.daily_y_stats[2].invert(models.fusion_nets[2].predict(x));
        out.push_back(fc);
        if (kept_samples) kept_samples->push_back(s);
    }
    return out;
}

const EvalRow* EvalReport::find(const std::string& model, const std::string& timeframe,
                                const std::string& component) const {
    for (const auto& row : rows)
        if (row.model == model && row.timeframe == timeframe && row.component == component)
            return &row;
    return nullptr;
}

EvalReport evaluate(const TrainedModels& models, const PreparedData& daily,
                    const PreparedData& monthly) {
    if (daily.split.test_indices.empty() || monthly.split.test_indices.empty())
        throw DataError("evaluate: empty test set");

    EvalReport report;
    const auto monthly_map = monthly_forecast_map(models, monthly);
    std::vector<std::size_t> kept;
    const auto forecasts =
        fusion_forecasts(models, daily, monthly_map, daily.split.test_indices, &kept);
    if (kept.empty()) throw DataError("evaluate: no daily test sample had a monthly forecast");

    const char* comp_names[3] = {"high", "low", "close"};
    for (std::size_t c = 0; c < 3; ++c) {
        std::vector<double> preds, targets;
        preds.reserve(kept.size());
        targets.reserve(kept.size());
        for (std::size_t i = 0; i < kept.size(); ++i) {
            const auto& fc = forecasts[i];
            preds.push_back(c == 0 ? fc.high : c == 1 ? fc.low : fc.close);
            targets.push_back(daily.frame.targets(daily.target_row(kept[i]), c));
        }
        const auto m = compute_metrics(preds, targets);
        report.rows.push_back({"lstm_mlp", "daily", comp_names[c], m.rmse, m.mae});
    }

    for (std::size_t c = 0; c < 3; ++c) {
        std::vector<double> preds, targets;
        for (std::size_t s : monthly.split.test_indices) {
            const double z = models.monthly_nets[c].predict(monthly.view.x_std, s);
            preds.push_back(models.monthly_y_stats[c].invert(z));
            targets.push_back(monthly.frame.targets(monthly.target_row(s), c));
        }
        const auto m = compute_metrics(preds, targets);
        report.rows.push_back({"lstm_mlp", "monthly", comp_names[c], m.rmse, m.mae});
    }
    return report;
}

std::pair<ForecastTriple, ForecastTriple> predict_next_day(const TrainedModels& models,
                                                           const data::FeatureFrame& daily,
                                                           const data::FeatureFrame& monthly) {
    if (daily.columns != models.daily_columns || monthly.columns != models.monthly_columns)
        throw DataError("predict: feature columns differ from the trained checkpoint");

    const auto daily_view = apply_stats(daily, models.daily_x_stats, models.daily_y_stats);
    const auto monthly_view = apply_stats(monthly, models.monthly_x_stats, models.monthly_y_stats);
    if (daily_view.x_std.rows() < models.daily_window ||
        monthly_view.x_std.rows() < models.monthly_window)
        throw DataError("predict: insufficient history to fill the lookback windows");

    const std::size_t d_start = daily_view.x_std.rows() - models.daily_window;
    const std::size_t m_start = monthly_view.x_std.rows() - models.monthly_window;

    std::array<double, 3> monthly_std{};
    for (std::size_t c = 0; c < 3; ++c)
        monthly_std[c] = models.monthly_nets[c].predict(monthly_view.x_std, m_start);

    std::array<double, 6> x{};
    for (std::size_t c = 0; c < 3; ++c)
        x[c] = models.daily_nets[c].predict(daily_view.x_std, d_start);
    for (std::size_t c = 0; c < 3; ++c) x[3 + c] = monthly_std[c];

    ForecastTriple next_day;
    next_day.horizon = ForecastTriple::Horizon::next_day;
    next_day.high = models.daily_y_stats[0].invert(models.fusion_nets[0].predict(x));
    next_day.low = models.daily_y_stats[1].invert(models.fusion_nets[1].predict(x));
    next_day.close = models.daily_y_stats[2].invert(models.fusion_nets[2].predict(x));

    ForecastTriple next_month;
    next_month.horizon = ForecastTriple::Horizon::next_month;
    next_month.high = models.monthly_y_stats[0].invert(monthly_std[0]);
    next_month.low = models.monthly_y_stats[1].invert(monthly_std[1]);
    next_month.close = models.monthly_y_stats[2].invert(monthly_std[2]);
    return {next_day, next_month};
}

void write_eval_csv(const EvalReport& report, const std::string& path,
                    bool include_model_column) {
    std::string out = include_model_column ? "model,timeframe,component,rmse,mae\n"
                                           : "timeframe,component,rmse,mae\n";
    for (const auto& row : report.rows) {
        if (include_model_column) out += row.model + ",";
        out += row.timeframe + "," + row.component + "," + fmt_g(row.rmse) + "," +
               fmt_g(row.mae) + "\n";
    }
    write_text_file(path, out);
}

}  // namespace goldcast::pipeline
