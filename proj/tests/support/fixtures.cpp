#include "support/fixtures.hpp"

#include <cmath>

#include "goldcast/data/features.hpp"
#include "goldcast/textio.hpp"

namespace goldcast::testing {

int day_of_week(const Date& d) {
    static const int t[] = {0, 3, 2, 5, 0, 3, 5, 1, 4, 6, 2, 4};
    int y = d.year - (d.month < 3);
    return (y + y / 4 - y / 100 + y / 400 + t[d.month - 1] + d.day) % 7;
}

double gaussian(Rng& rng) {
    double u1 = rng.uniform01();
    while (u1 <= 0.0) u1 = rng.uniform01();
    const double u2 = rng.uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::vector<Date> trading_days(Date start, std::size_t count) {
    std::vector<Date> days;
    days.reserve(count);
    Date d = start;
    while (days.size() < count) {
        const int dow = day_of_week(d);
        if (dow != 0 && dow != 6) days.push_back(d);
        d = d.next_day();
    }
    return days;
}

std::vector<data::OhlcBar> synthetic_daily_bars(const SyntheticSpec& spec, std::uint64_t seed) {
    Rng rng(seed);
    const auto days = trading_days(spec.start, spec.n_days);
    std::vector<data::OhlcBar> bars;
    bars.reserve(spec.n_days);
    double prev_close = spec.base;
    for (std::size_t t = 0; t < spec.n_days; ++t) {
        const double close = spec.base + spec.trend * static_cast<double>(t) +
                             spec.amplitude * std::sin(2.0 * M_PI * static_cast<double>(t) /
                                                       spec.period) +
                             spec.noise_sigma * gaussian(rng);
        data::OhlcBar bar;
        bar.timestamp = days[t];
        bar.open = t == 0 ? close : prev_close;
        bar.high = std::max(bar.open, close) + std::fabs(gaussian(rng)) * 1.5 + 0.2;
        bar.low = std::min(bar.open, close) - std::fabs(gaussian(rng)) * 1.5 - 0.2;
        bar.close = close;
        bar.volume = 150000.0 + 30000.0 * std::sin(static_cast<double>(t) / 7.0) +
                     5000.0 * gaussian(rng);
        if (bar.volume < 0.0) bar.volume = 0.0;
        bars.push_back(bar);
        prev_close = close;
    }
    return bars;
}

std::vector<data::OhlcBar> linear_daily_bars(std::size_t n_days, double base, double slope,
                                             Date start) {
    const auto days = trading_days(start, n_days);
    std::vector<data::OhlcBar> bars;
    bars.reserve(n_days);
    for (std::size_t t = 0; t < n_days; ++t) {
        const double close = base + slope * static_cast<double>(t);
        data::OhlcBar bar;
        bar.timestamp = days[t];
        bar.open = t == 0 ? close : base + slope * static_cast<double>(t - 1);
        bar.high = std::max(bar.open, close) + 0.5;
        bar.low = std::min(bar.open, close) - 0.5;
        bar.close = close;
        // volume must vary or standardization rejects the column
        bar.volume = 100000.0 + 1000.0 * static_cast<double>(t % 13);
        bars.push_back(bar);
    }
    return bars;
}

std::vector<data::MacroRecord> synthetic_macro(const std::vector<data::OhlcBar>& daily,
                                               std::uint64_t seed) {
    Rng rng(seed);
    std::vector<data::MacroRecord> records;
    double gdp = 20000.0, cpi = 250.0, ppi = 190.0, unemployment = 5.0, inflation = 2.0;
    YearMonth period = YearMonth::of(daily.front().timestamp);
    const YearMonth last = YearMonth::of(daily.back().timestamp);
    while (!(last < period)) {
        gdp += 40.0 + 15.0 * gaussian(rng);
        cpi += 0.4 + 0.2 * gaussian(rng);
        ppi += 0.3 + 0.25 * gaussian(rng);
        unemployment = std::max(1.0, unemployment + 0.10 * gaussian(rng));
        inflation = std::max(-1.0, inflation + 0.08 * gaussian(rng));
        records.push_back({period, gdp, cpi, ppi, unemployment, inflation});
        period = period.next();
    }
    return records;
}

void write_ohlc_csv(const std::vector<data::OhlcBar>& bars, const std::string& path) {
    std::string out = "date,open,high,low,close,volume\n";
    for (const auto& b : bars)
        out += b.timestamp.to_string() + ',' + fmt_exact(b.open) + ',' + fmt_exact(b.high) +
               ',' + fmt_exact(b.low) + ',' + fmt_exact(b.close) + ',' + fmt_exact(b.volume) +
               '\n';
    write_text_file(path, out);
}

void write_macro_csv(const std::vector<data::MacroRecord>& records, const std::string& path) {
    std::string out = "period,gdp,cpi,ppi,unemployment,inflation\n";
    for (const auto& r : records)
        out += r.period.to_string() + ',' + fmt_exact(r.gdp) + ',' + fmt_exact(r.cpi) + ',' +
               fmt_exact(r.ppi) + ',' + fmt_exact(r.unemployment) + ',' +
               fmt_exact(r.inflation) + '\n';
    write_text_file(path, out);
}

void write_aux_csv(const data::AuxSeries& series, const std::string& path) {
    std::string out = "date,value\n";
    for (const auto& [date, value] : series.points)
        out += date.to_string() + ',' + fmt_exact(value) + '\n';
    write_text_file(path, out);
}

}  // namespace goldcast::testing
