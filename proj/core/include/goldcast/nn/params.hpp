#pragma once

#include <span>
#include <vector>

namespace goldcast::nn {

/// A contiguous block of trainable values with its matching gradient buffer.
/// Models expose their parameters as an ordered list of such blocks; the
/// optimizer, checkpointing, and gradient checks all work through this view.
struct ParamBlock {
    std::span<double> value;
    std::span<double> grad;
};

using ParamList = std::vector<ParamBlock>;

std::size_t param_count(const ParamList& params);
std::vector<double> snapshot_values(const ParamList& params);
void restore_values(const ParamList& params, std::span<const double> values);
void zero_grads(const ParamList& params);
void scale_grads(const ParamList& params, double factor);

}  // namespace goldcast::nn
