#pragma once

#include "goldcast/nn/mlp.hpp"

namespace goldcast::baseline {

/// FNN baseline: feedforward regressor trained with Adam.
nn::MlpRegressor train_fnn(const nn::TabularDataset& train, const nn::TabularDataset& val,
                           const std::vector<std::size_t>& hidden, nn::TrainConfig config,
                           nn::TrainHistory* history = nullptr);

/// BPNN baseline: same topology trained by plain gradient descent with a fixed
/// learning rate, which is what distinguishes it from the FNN.
nn::MlpRegressor train_bpnn(const nn::TabularDataset& train, const nn::TabularDataset& val,
                            const std::vector<std::size_t>& hidden, nn::TrainConfig config,
                            nn::TrainHistory* history = nullptr);

}  // namespace goldcast::baseline
