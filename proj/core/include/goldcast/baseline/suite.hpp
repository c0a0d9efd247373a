#pragma once

#include "goldcast/config.hpp"
#include "goldcast/pipeline/dataset.hpp"
#include "goldcast/pipeline/pipeline.hpp"

namespace goldcast::baseline {

/// Trains the four classical comparators (fnn, bpnn, rbf, grnn) per timeframe
/// and component on the same splits and standardization as the main pipeline,
/// picking hyperparameters from the configured grids by validation RMSE, and
/// appends their test metrics to the report.
void append_baseline_rows(pipeline::EvalReport& report, const pipeline::PreparedData& daily,
                          const pipeline::PreparedData& monthly, const BaselineGrids& grids,
                          std::uint64_t seed);

}  // namespace goldcast::baseline
