#pragma once

#include <cstddef>
#include <vector>

namespace goldcast::data {

/// Chronological split: k contiguous folds over the leading samples, the test
/// block strictly last. Folds are pairwise disjoint, sizes differ by at most 1,
/// and folds + test cover every usable index exactly once.
struct DatasetSplit {
    std::vector<std::vector<std::size_t>> train_folds;
    std::vector<std::size_t> test_indices;
    std::size_t window_len = 1;

    std::size_t n_samples() const;
    /// All fold indices flattened (chronological order).
    std::vector<std::size_t> fold_union() const;
    /// Indices of every fold except `held_out` (used as the inner validation fold).
    std::vector<std::size_t> folds_except(std::size_t held_out) const;
};

/// test block = chronologically last round(n * test_frac) samples; remaining
/// samples partitioned into k contiguous folds, larger folds first.
/// Throws NumericError when any fold would be empty.
DatasetSplit make_splits(std::size_t n_samples, std::size_t k, double test_frac,
                         std::size_t window_len = 1);

}  // namespace goldcast::data
