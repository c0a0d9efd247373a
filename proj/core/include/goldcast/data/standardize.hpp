#pragma once

#include <span>
#include <string>
#include <vector>

namespace goldcast::data {

/// The (mean, std) pair fitted on a window, applied as z = (x - mean) / std.
/// Population standard deviation (divide by n).
struct Standardizer {
    double mean = 0.0;
    double std = 1.0;

    double transform(double x) const { return (x - mean) / std; }
    double invert(double z) const { return z * std + mean; }
};

/// Fits on `values`; throws NumericError for length < 2 or a constant series.
Standardizer fit_standardizer(std::span<const double> values);

struct StandardizedSeries {
    std::string name;
    std::vector<double> values;  // z-scores
    Standardizer stats;
};

StandardizedSeries standardize(std::span<const double> values, const std::string& name = "");
std::vector<double> destandardize(const StandardizedSeries& series);

}  // namespace goldcast::data
