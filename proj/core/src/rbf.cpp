#include "goldcast/baseline/rbf.hpp"

#include <cmath>
#include <limits>

#include "goldcast/errors.hpp"

namespace goldcast::baseline {

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
    return norm_sq_diff(a, b);
}

}  // namespace

Matrix kmeans_centers(const Matrix& x, std::span<const std::size_t> rows, std::size_t m,
                      std::uint64_t seed, std::size_t max_iters) {
    if (m == 0 || m > rows.size())
        throw NumericError("kmeans: need 1 <= m <= n_train, got m=" + std::to_string(m) +
                           ", n=" + std::to_string(rows.size()));
    const std::size_t f = x.cols();
    Rng rng(seed);

    // init: m distinct training rows, chosen by a seeded partial shuffle
    std::vector<std::size_t> pick(rows.begin(), rows.end());
    for (std::size_t i = 0; i < m; ++i)
        std::swap(pick[i], pick[i + rng.below(pick.size() - i)]);
    Matrix centers(m, f);
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t j = 0; j < f; ++j) centers(c, j) = x(pick[c], j);

    std::vector<std::size_t> assign(rows.size(), 0);
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < m; ++c) {
                const double d = sq_dist(x.row(rows[i]), centers.row(c));
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (assign[i] != best) {
                assign[i] = best;
                changed = true;
            }
        }
        if (!changed && iter > 0) break;

        Matrix sums(m, f);
        std::vector<std::size_t> counts(m, 0);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            ++counts[assign[i]];
            auto row = x.row(rows[i]);
            for (std::size_t j = 0; j < f; ++j) sums(assign[i], j) += row[j];
        }
        for (std::size_t c = 0; c < m; ++c) {
            if (counts[c] == 0) {
                // reseed an empty cluster with the point farthest from its center
                std::size_t far = rows[0];
                double far_d = -1.0;
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    const double d = sq_dist(x.row(rows[i]), centers.row(assign[i]));
                    if (d > far_d) {
                        far_d = d;
                        far = rows[i];
                    }
                }
                for (std::size_t j = 0; j < f; ++j) centers(c, j) = x(far, j);
            } else {
                for (std::size_t j = 0; j < f; ++j)
                    centers(c, j) = sums(c, j) / static_cast<double>(counts[c]);
            }
        }
    }
    return centers;
}

RbfNetwork fit_rbf(const Matrix& x, const Matrix& y, int target_col,
                   std::span<const std::size_t> rows, std::size_t m, double bandwidth,
                   std::uint64_t seed) {
    if (!(bandwidth > 0.0)) throw NumericError("fit_rbf: bandwidth must be positive");

    RbfNetwork model;
    model.centers = kmeans_centers(x, rows, m, seed);
    model.widths.assign(m, bandwidth);

    // design matrix: Gaussian features plus a bias column
    const std::size_t n = rows.size();
    Matrix phi(n, m + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < m; ++c) {
            const double d2 = sq_dist(x.row(rows[i]), model.centers.row(c));
            phi(i, c) = std::exp(-d2 / (2.0 * bandwidth * bandwidth));
        }
        phi(i, m) = 1.0;
    }

    Matrix gram(m + 1, m + 1);
    Vector rhs(m + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double target = y(rows[i], target_col);
        for (std::size_t a = 0; a <= m; ++a) {
            rhs[a] += phi(i, a) * target;
            for (std::size_t b = a; b <= m; ++b) gram(a, b) += phi(i, a) * phi(i, b);
        }
    }
    for (std::size_t a = 0; a <= m; ++a)
        for (std::size_t b = 0; b < a; ++b) gram(a, b) = gram(b, a);

    auto solution = cholesky_solve(gram, rhs);
    if (!solution) {
        model.ridge_fallback = true;
        constexpr double lambda = 1e-8;
        for (std::size_t a = 0; a <= m; ++a) gram(a, a) += lambda;
        solution = cholesky_solve(gram, rhs);
        if (!solution) throw NumericError("fit_rbf: normal equations unsolvable even with ridge");
    }
    model.weights = std::move(*solution);
    return model;
}

double predict_rbf(const RbfNetwork& model, std::span<const double> x) {
    const std::size_t m = model.centers.rows();
    double out = model.weights[m];  // bias
    for (std::size_t c = 0; c < m; ++c) {
        const double w = model.widths[c];
        const double d2 = sq_dist(x, model.centers.row(c));
        out += model.weights[c] * std::exp(-d2 / (2.0 * w * w));
    }
    return out;
}

}  // namespace goldcast::baseline
