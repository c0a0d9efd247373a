#include "goldcast/baseline/feedforward.hpp"

namespace goldcast::baseline {

namespace {

nn::MlpRegressor train_feedforward(const nn::TabularDataset& train,
                                   const nn::TabularDataset& val,
                                   const std::vector<std::size_t>& hidden,
                                   nn::TrainConfig config, nn::TrainHistory* history) {
    Rng init_rng(derive_seed(config.seed, 0x0f0f));
    nn::MlpRegressor model(nn::Mlp(train.x->cols(), hidden, 1, init_rng));
    auto hist = nn::fit(model, train, val, config);
    if (history) *history = std::move(hist);
    return model;
}

}  // namespace

nn::MlpRegressor train_fnn(const nn::TabularDataset& train, const nn::TabularDataset& val,
                           const std::vector<std::size_t>& hidden, nn::TrainConfig config,
                           nn::TrainHistory* history) {
    config.optimizer = nn::TrainConfig::Optimizer::adam;
    return train_feedforward(train, val, hidden, config, history);
}

nn::MlpRegressor train_bpnn(const nn::TabularDataset& train, const nn::TabularDataset& val,
                            const std::vector<std::size_t>& hidden, nn::TrainConfig config,
                            nn::TrainHistory* history) {
    config.optimizer = nn::TrainConfig::Optimizer::sgd;
    return train_feedforward(train, val, hidden, config, history);
}

}  // namespace goldcast::baseline
