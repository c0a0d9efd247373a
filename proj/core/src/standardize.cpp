#include "goldcast/data/standardize.hpp"

#include <cmath>

#include "goldcast/errors.hpp"

namespace goldcast::data {

Standardizer fit_standardizer(std::span<const double> values) {
    if (values.size() < 2)
        throw NumericError("standardize: need at least 2 values, got " +
                           std::to_string(values.size()));
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size());
    const double sd = std::sqrt(var);
    if (sd == 0.0 || !std::isfinite(sd))
        throw NumericError("standardize: degenerate series (sigma = 0)");
    return {mean, sd};
}

StandardizedSeries standardize(std::span<const double> values, const std::string& name) {
    StandardizedSeries out;
    out.name = name;
    out.stats = fit_standardizer(values);
    out.values.reserve(values.size());
    for (double v : values) out.values.push_back(out.stats.transform(v));
    return out;
}

std::vector<double> destandardize(const StandardizedSeries& series) {
    std::vector<double> out;
    out.reserve(series.values.size());
    for (double z : series.values) out.push_back(series.stats.invert(z));
    return out;
}

}  // namespace goldcast::data
