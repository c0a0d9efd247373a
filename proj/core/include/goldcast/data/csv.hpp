#pragma once

#include <string>
#include <vector>

#include "goldcast/data/ohlc.hpp"

namespace goldcast::data {

/// Reads `date,open,high,low,close,volume` (ISO-8601 dates, '.' decimals).
/// Bars must be strictly ascending; duplicates and invariant violations are
/// rejected with the offending line number. For monthly resolution each bar
/// must also land in a distinct calendar month.
std::vector<OhlcBar> load_ohlc_csv(const std::string& path, Resolution resolution);

/// Reads `period,gdp,cpi,ppi,unemployment,inflation` with period as YYYY-MM,
/// strictly increasing.
std::vector<MacroRecord> load_macro_csv(const std::string& path);

/// Reads `date,value`, strictly ascending dates.
AuxSeries load_aux_csv(const std::string& path, const std::string& name);

}  // namespace goldcast::data
