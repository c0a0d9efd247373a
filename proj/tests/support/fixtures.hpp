#pragma once

#include <string>
#include <vector>

#include "goldcast/data/ohlc.hpp"
#include "goldcast/rng.hpp"

namespace goldcast::testing {

/// 0 = Sunday .. 6 = Saturday (Sakamoto's method).
int day_of_week(const Date& d);

/// Standard normal draw via Box-Muller on the deterministic Rng.
double gaussian(Rng& rng);

/// Trading-day calendar (weekends skipped) starting at `start`.
std::vector<Date> trading_days(Date start, std::size_t count);

struct SyntheticSpec {
    std::size_t n_days = 1200;
    double base = 1500.0;
    double trend = 0.5;
    double amplitude = 20.0;
    double period = 30.0;
    double noise_sigma = 2.0;
    Date start{2017, 1, 2};
};

/// close_t = base + trend*t + amplitude*sin(2*pi*t/period) + N(0, sigma),
/// with open/high/low wrapped around it and a varying volume.
std::vector<data::OhlcBar> synthetic_daily_bars(const SyntheticSpec& spec, std::uint64_t seed);

/// Strictly rising noiseless series close_t = base + slope*t (an easy target
/// that any real forecaster must beat persistence on).
std::vector<data::OhlcBar> linear_daily_bars(std::size_t n_days, double base = 1000.0,
                                             double slope = 1.0, Date start = {2017, 1, 2});

std::vector<data::MacroRecord> synthetic_macro(const std::vector<data::OhlcBar>& daily,
                                               std::uint64_t seed);

void write_ohlc_csv(const std::vector<data::OhlcBar>& bars, const std::string& path);
void write_macro_csv(const std::vector<data::MacroRecord>& records, const std::string& path);
void write_aux_csv(const data::AuxSeries& series, const std::string& path);

}  // namespace goldcast::testing
