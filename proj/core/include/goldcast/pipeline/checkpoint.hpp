#pragma once

#include <string>

#include "goldcast/pipeline/pipeline.hpp"

namespace goldcast::pipeline {

/// Single-file binary checkpoint for the nine trained models, their
/// architectures, lookback windows, feature columns, and the (mean, sigma)
/// pairs needed to destandardize predictions.
///
/// Layout (little-endian): magic "GCCKPT01", then length-prefixed sections;
/// parameters are raw IEEE-754 doubles in ParamList order. Loading verifies
/// the magic and version and rejects anything else.
void save_checkpoint(TrainedModels& models, const std::string& path);
TrainedModels load_checkpoint(const std::string& path);

}  // namespace goldcast::pipeline
