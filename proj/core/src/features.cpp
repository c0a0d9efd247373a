#include "goldcast/data/features.hpp"

#include <algorithm>

#include "goldcast/errors.hpp"

namespace goldcast::data {

namespace {

/// Value of `series` at `date` by forward-fill. The caller guarantees coverage.
double ffill_at(const AuxSeries& series, const Date& date) {
    // points ascending; find last point with date <= query
    auto it = std::upper_bound(series.points.begin(), series.points.end(), date,
                               [](const Date& d, const auto& p) { return d < p.first; });
    return std::prev(it)->second;
}

}  // namespace

FeatureFrame align_features(const std::vector<OhlcBar>& bars,
                            const std::vector<AuxSeries>& aux) {
    if (bars.size() < 2)
        throw DataError("align_features: need at least 2 bars to form one target row");
    for (const auto& s : aux) {
        if (s.points.empty())
            throw DataError("align_features: aux series '" + s.name + "' is empty");
        if (bars.front().timestamp < s.points.front().first)
            throw DataError("align_features: aux series '" + s.name + "' starts " +
                            s.points.front().first.to_string() + ", after first bar " +
                            bars.front().timestamp.to_string() +
                            " (forward-fill cannot close a leading gap)");
    }

    FeatureFrame frame;
    frame.columns = {"high", "low", "close", "volume"};
    for (const auto& s : aux) frame.columns.push_back(s.name);

    const std::size_t n_rows = bars.size() - 1;
    const std::size_t n_cols = frame.columns.size();
    frame.features = Matrix(n_rows, n_cols);
    frame.targets = Matrix(n_rows, 3);
    frame.dates.reserve(n_rows);
    frame.target_dates.reserve(n_rows);

    auto fill_row = [&](std::span<double> row, const OhlcBar& bar) {
        row[0] = bar.high;
        row[1] = bar.low;
        row[2] = bar.close;
        row[3] = bar.volume;
        for (std::size_t a = 0; a < aux.size(); ++a)
            row[4 + a] = ffill_at(aux[a], bar.timestamp);
    };

    for (std::size_t r = 0; r < n_rows; ++r) {
        fill_row(frame.features.row(r), bars[r]);
        frame.targets(r, 0) = bars[r + 1].high;
        frame.targets(r, 1) = bars[r + 1].low;
        frame.targets(r, 2) = bars[r + 1].close;
        frame.dates.push_back(bars[r].timestamp);
        frame.target_dates.push_back(bars[r + 1].timestamp);
    }

    frame.latest_row.resize(n_cols);
    fill_row(frame.latest_row, bars.back());
    frame.latest_date = bars.back().timestamp;
    return frame;
}

std::vector<AuxSeries> macro_to_aux(const std::vector<MacroRecord>& records) {
    std::vector<AuxSeries> out(5);
    out[0].name = "gdp";
    out[1].name = "cpi";
    out[2].name = "ppi";
    out[3].name = "unemployment";
    out[4].name = "inflation";
    for (const auto& rec : records) {
        const Date d = rec.period.first_day();
        out[0].points.emplace_back(d, rec.gdp);
        out[1].points.emplace_back(d, rec.cpi);
        out[2].points.emplace_back(d, rec.ppi);
        out[3].points.emplace_back(d, rec.unemployment);
        out[4].points.emplace_back(d, rec.inflation);
    }
    return out;
}

std::vector<OhlcBar> aggregate_monthly(const std::vector<OhlcBar>& daily) {
    std::vector<OhlcBar> monthly;
    for (const auto& bar : daily) {
        if (monthly.empty() ||
            YearMonth::of(monthly.back().timestamp) != YearMonth::of(bar.timestamp)) {
            monthly.push_back(bar);
        } else {
            OhlcBar& m = monthly.back();
            m.high = std::max(m.high, bar.high);
            m.low = std::min(m.low, bar.low);
            m.close = bar.close;
            m.volume += bar.volume;
        }
    }
    return monthly;
}

}  // namespace goldcast::data
