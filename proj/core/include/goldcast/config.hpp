#pragma once

#include <string>
#include <vector>

#include "goldcast/pipeline/pipeline.hpp"
#include "goldcast/textio.hpp"
#include "goldcast/trading/backtest.hpp"

namespace goldcast {

/// Grid-search spaces for the classical baselines, documented in the config.
struct BaselineGrids {
    bool enabled = false;
    std::vector<std::size_t> hidden_grid = {8, 32};       // one hidden layer per entry
    std::vector<std::size_t> rbf_centers_grid = {8, 16};
    std::vector<double> bandwidth_grid = {0.5, 1.0, 2.0};
    std::size_t epochs = 40;
};

/// Run configuration parsed from a plain `key = value` file. Unknown keys are
/// rejected. See the README for the full key list.
struct RunConfig {
    std::string daily_csv;
    std::string monthly_csv;
    std::string macro_csv;                                 // optional
    std::vector<std::pair<std::string, std::string>> aux;  // name -> path

    pipeline::PipelineConfig pipeline;
    trading::TradingParams trading;
    double initial_balance = 1000.0;
    BaselineGrids baselines;

    KeyValueFile raw;

    static RunConfig load(const std::string& path);          // throws Usage/DataError
    static RunConfig from_kv(const KeyValueFile& kv);

    /// FNV-1a over the canonicalized config text; stamped into run manifests.
    std::string hash_hex() const { return to_hex(fnv1a64(raw.canonical())); }
};

}  // namespace goldcast
