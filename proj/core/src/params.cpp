#include "goldcast/nn/params.hpp"

#include <algorithm>
#include <cassert>

namespace goldcast::nn {

std::size_t param_count(const ParamList& params) {
    std::size_t n = 0;
    for (const auto& block : params) n += block.value.size();
    return n;
}

std::vector<double> snapshot_values(const ParamList& params) {
    std::vector<double> out;
    out.reserve(param_count(params));
    for (const auto& block : params)
        out.insert(out.end(), block.value.begin(), block.value.end());
    return out;
}

void restore_values(const ParamList& params, std::span<const double> values) {
    std::size_t off = 0;
    for (const auto& block : params) {
        assert(off + block.value.size() <= values.size());
        std::copy_n(values.begin() + off, block.value.size(), block.value.begin());
        off += block.value.size();
    }
    assert(off == values.size());
}

void zero_grads(const ParamList& params) {
    for (const auto& block : params) std::fill(block.grad.begin(), block.grad.end(), 0.0);
}

void scale_grads(const ParamList& params, double factor) {
    for (const auto& block : params)
        for (double& g : block.grad) g *= factor;
}

}  // namespace goldcast::nn
