#include "goldcast/config.hpp"

#include <cstdlib>

#include "goldcast/errors.hpp"

namespace goldcast {

namespace {

double to_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size())
        throw UsageError("config: key '" + key + "' expects a number, got '" + v + "'");
    return x;
}

std::size_t to_count(const std::string& key, const std::string& v) {
    const double x = to_double(key, v);
    if (x < 0 || x != static_cast<double>(static_cast<std::size_t>(x)))
        throw UsageError("config: key '" + key + "' expects a non-negative integer");
    return static_cast<std::size_t>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw UsageError("config: key '" + key + "' expects true/false");
}

std::vector<std::size_t> to_count_list(const std::string& key, const std::string& v) {
    std::vector<std::size_t> out;
    for (const auto& part : split(v, ','))
        if (!trim(part).empty()) out.push_back(to_count(key, trim(part)));
    if (out.empty()) throw UsageError("config: key '" + key + "' expects a list");
    return out;
}

std::vector<double> to_double_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const auto& part : split(v, ','))
        if (!trim(part).empty()) out.push_back(to_double(key, trim(part)));
    if (out.empty()) throw UsageError("config: key '" + key + "' expects a list");
    return out;
}

}  // namespace

RunConfig RunConfig::from_kv(const KeyValueFile& kv) {
    RunConfig cfg;
    cfg.raw = kv;
    for (const auto& [key, value] : kv.entries) {
        if (key == "data.daily_csv") cfg.daily_csv = value;
        else if (key == "data.monthly_csv") cfg.monthly_csv = value;
        else if (key == "data.macro_csv") cfg.macro_csv = value;
        else if (key.rfind("data.aux.", 0) == 0) cfg.aux.emplace_back(key.substr(9), value);
        else if (key == "pipeline.daily_window") cfg.pipeline.daily_window = to_count(key, value);
        else if (key == "pipeline.monthly_window")
            cfg.pipeline.monthly_window = to_count(key, value);
        else if (key == "pipeline.k_folds") cfg.pipeline.k_folds = to_count(key, value);
        else if (key == "pipeline.test_fraction")
            cfg.pipeline.test_fraction = to_double(key, value);
        else if (key == "pipeline.fusion_val_fraction")
            cfg.pipeline.fusion_val_fraction = to_double(key, value);
        else if (key == "pipeline.parallel")
            cfg.pipeline.parallel_searches = to_bool(key, value);
        else if (key == "train.max_epochs") cfg.pipeline.train.max_epochs = to_count(key, value);
        else if (key == "train.patience") cfg.pipeline.train.patience = to_count(key, value);
        else if (key == "train.dropout") cfg.pipeline.train.dropout_rate = to_double(key, value);
        else if (key == "train.batch_size") cfg.pipeline.train.batch_size = to_count(key, value);
        else if (key == "train.learning_rate")
            cfg.pipeline.train.adam.learning_rate = to_double(key, value);
        else if (key == "train.search_epochs")
            cfg.pipeline.search_epochs = to_count(key, value);
        else if (key == "gwo.herd_size")
            cfg.pipeline.gwo.herd_size = static_cast<int>(to_count(key, value));
        else if (key == "gwo.iterations")
            cfg.pipeline.gwo.iterations = static_cast<int>(to_count(key, value));
        else if (key == "gwo.lower_bound") cfg.pipeline.gwo.lower_bound = to_double(key, value);
        else if (key == "gwo.upper_bound") cfg.pipeline.gwo.upper_bound = to_double(key, value);
        else if (key == "gwo.parallel") cfg.pipeline.gwo.parallel = to_bool(key, value);
        else if (key == "trading.initial_balance") cfg.initial_balance = to_double(key, value);
        else if (key == "trading.risk_fraction")
            cfg.trading.risk_fraction = to_double(key, value);
        else if (key == "trading.leverage") cfg.trading.leverage = to_double(key, value);
        else if (key == "trading.tick") cfg.trading.tick = to_double(key, value);
        else if (key == "trading.lot_step") cfg.trading.lot_step = to_double(key, value);
        else if (key == "trading.contract_size")
            cfg.trading.contract_size = to_double(key, value);
        else if (key == "baselines.enabled") cfg.baselines.enabled = to_bool(key, value);
        else if (key == "baselines.hidden_grid")
            cfg.baselines.hidden_grid = to_count_list(key, value);
        else if (key == "baselines.rbf_centers_grid")
            cfg.baselines.rbf_centers_grid = to_count_list(key, value);
        else if (key == "baselines.bandwidth_grid")
            cfg.baselines.bandwidth_grid = to_double_list(key, value);
        else if (key == "baselines.epochs") cfg.baselines.epochs = to_count(key, value);
        else if (key == "seed")
            cfg.pipeline.master_seed = static_cast<std::uint64_t>(to_count(key, value));
        else
            throw UsageError("config: unknown key '" + key + "'");
    }

    if (cfg.daily_csv.empty()) throw UsageError("config: data.daily_csv is required");
    if (cfg.monthly_csv.empty()) throw UsageError("config: data.monthly_csv is required");
    if (cfg.pipeline.daily_window < 2 || cfg.pipeline.monthly_window < 2)
        throw UsageError("config: lookback windows must be >= 2");
    if (!(cfg.pipeline.test_fraction > 0.0 && cfg.pipeline.test_fraction < 0.5))
        throw UsageError("config: pipeline.test_fraction must be in (0, 0.5)");
    if (cfg.pipeline.train.dropout_rate < 0.0 || cfg.pipeline.train.dropout_rate >= 1.0)
        throw UsageError("config: train.dropout must be in [0, 1)");
    if (cfg.pipeline.train.patience < 1)
        throw UsageError("config: train.patience must be >= 1");
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    return from_kv(KeyValueFile::load(path));
}

}  // namespace goldcast
