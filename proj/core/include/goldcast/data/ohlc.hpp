#pragma once

#include <string>
#include <vector>

#include "goldcast/date.hpp"

namespace goldcast::data {

enum class Resolution { daily, monthly };

/// One time-stamped market bar. Invariants: low <= min(open, close),
/// high >= max(open, close), low <= high, volume >= 0.
struct OhlcBar {
    Date timestamp;
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    double volume = 0.0;
};

/// Throws DataError naming `context` when a bar violates its invariants.
void validate_bar(const OhlcBar& bar, const std::string& context);

/// One month of macroeconomic indicator levels.
struct MacroRecord {
    YearMonth period;
    double gdp = 0.0;
    double cpi = 0.0;
    double ppi = 0.0;
    double unemployment = 0.0;
    double inflation = 0.0;
};

/// A named auxiliary series (oil, index, ...) joined onto bars by forward-fill.
struct AuxSeries {
    std::string name;
    std::vector<std::pair<Date, double>> points;  // ascending by date
};

}  // namespace goldcast::data
