#include "goldcast/data/splits.hpp"

#include <cmath>
#include <numeric>

#include "goldcast/errors.hpp"

namespace goldcast::data {

std::size_t DatasetSplit::n_samples() const {
    std::size_t n = test_indices.size();
    for (const auto& f : train_folds) n += f.size();
    return n;
}

std::vector<std::size_t> DatasetSplit::fold_union() const {
    std::vector<std::size_t> out;
    for (const auto& f : train_folds) out.insert(out.end(), f.begin(), f.end());
    return out;
}

std::vector<std::size_t> DatasetSplit::folds_except(std::size_t held_out) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < train_folds.size(); ++i) {
        if (i == held_out) continue;
        out.insert(out.end(), train_folds[i].begin(), train_folds[i].end());
    }
    return out;
}

DatasetSplit make_splits(std::size_t n_samples, std::size_t k, double test_frac,
                         std::size_t window_len) {
    if (k < 2) throw NumericError("make_splits: k must be >= 2");
    if (!(test_frac > 0.0 && test_frac < 0.5))
        throw NumericError("make_splits: test_frac must be in (0, 0.5)");

    const auto n_test =
        static_cast<std::size_t>(std::llround(static_cast<double>(n_samples) * test_frac));
    if (n_samples < n_test + k)
        throw NumericError("make_splits: " + std::to_string(n_samples) +
                           " samples cannot fill " + std::to_string(k) +
                           " folds plus a test block of " + std::to_string(n_test));

    const std::size_t n_fold_total = n_samples - n_test;
    const std::size_t base = n_fold_total / k;
    const std::size_t extra = n_fold_total % k;  // first `extra` folds get one more
    if (base == 0) throw NumericError("make_splits: empty fold after test removal");

    DatasetSplit split;
    split.window_len = window_len;
    std::size_t next = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t size = base + (i < extra ? 1 : 0);
        std::vector<std::size_t> fold(size);
        std::iota(fold.begin(), fold.end(), next);
        next += size;
        split.train_folds.push_back(std::move(fold));
    }
    split.test_indices.resize(n_test);
    std::iota(split.test_indices.begin(), split.test_indices.end(), n_fold_total);
    return split;
}

}  // namespace goldcast::data
