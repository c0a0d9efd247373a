#pragma once

#include <string>
#include <vector>

#include "goldcast/data/ohlc.hpp"
#include "goldcast/matrix.hpp"

namespace goldcast::data {

/// Aligned supervised frame. Row r holds the features of bar r; targets[r] is
/// the next bar's (high, low, close), so the frame has bars-1 usable rows.
/// `latest_row` keeps the final bar's features for out-of-sample prediction.
struct FeatureFrame {
    std::vector<std::string> columns;    // [high, low, close, volume, aux...]
    std::vector<Date> dates;             // date of row r (= bar r)
    std::vector<Date> target_dates;      // date of the bar targets[r] refers to
    Matrix features;                     // (bars-1) x n_cols
    Matrix targets;                      // (bars-1) x 3, next-period (high, low, close)
    Vector latest_row;                   // features of the final bar (no target yet)
    Date latest_date;
};

/// Joins auxiliary series onto bars by forward-fill (last value dated <= bar
/// date), so a row never sees data published after its own date. Throws
/// DataError when a series starts after the first bar.
FeatureFrame align_features(const std::vector<OhlcBar>& bars,
                            const std::vector<AuxSeries>& aux);

/// Expands a macro table into the five indicator series, each dated at the
/// first day of its period (publication lag is handled by the forward-fill).
std::vector<AuxSeries> macro_to_aux(const std::vector<MacroRecord>& records);

/// Aggregates daily bars into calendar-month bars (first open, max high,
/// min low, last close, summed volume), stamped at each month's first bar date.
std::vector<OhlcBar> aggregate_monthly(const std::vector<OhlcBar>& daily);

}  // namespace goldcast::data
