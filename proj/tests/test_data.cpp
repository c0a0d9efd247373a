#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <set>

#include "goldcast/data/csv.hpp"
#include "goldcast/data/features.hpp"
#include "goldcast/data/splits.hpp"
#include "goldcast/data/standardize.hpp"
#include "goldcast/errors.hpp"
#include "goldcast/rng.hpp"
#include "goldcast/textio.hpp"
#include "support/fixtures.hpp"

using namespace goldcast;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("ohlc csv: plain row maps to a bar") {
    const auto path = temp_path("ohlc_ok.csv");
    write_text_file(path,
                    "date,open,high,low,close,volume\n"
                    "2020-01-02,1518.1,1528.7,1513.0,1527.1,186000\n");
    const auto bars = data::load_ohlc_csv(path, data::Resolution::daily);
    REQUIRE(bars.size() == 1);
    CHECK(bars[0].timestamp == Date{2020, 1, 2});
    CHECK(bars[0].open == doctest::Approx(1518.1));
    CHECK(bars[0].high == doctest::Approx(1528.7));
    CHECK(bars[0].low == doctest::Approx(1513.0));
    CHECK(bars[0].close == doctest::Approx(1527.1));
    CHECK(bars[0].volume == doctest::Approx(186000));
}

TEST_CASE("ohlc csv: high < low is rejected naming the line") {
    const auto path = temp_path("ohlc_badrange.csv");
    std::string body = "date,open,high,low,close,volume\n";
    for (int d = 2; d <= 7; ++d)
        body += "2020-01-0" + std::to_string(d) + ",10,12,9,11,100\n";
    body += "2020-01-08,10,9.5,9.8,9.6,100\n";  // line 8: high < low
    write_text_file(path, body);
    try {
        data::load_ohlc_csv(path, data::Resolution::daily);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find(":8") != std::string::npos);
    }
}

TEST_CASE("ohlc csv: duplicate timestamps rejected") {
    const auto path = temp_path("ohlc_dup.csv");
    write_text_file(path,
                    "date,open,high,low,close,volume\n"
                    "2020-01-02,10,12,9,11,100\n"
                    "2020-01-02,10,12,9,11,100\n");
    CHECK_THROWS_WITH_AS(data::load_ohlc_csv(path, data::Resolution::daily),
                         doctest::Contains("duplicate timestamp"), DataError);
}

TEST_CASE("ohlc csv: non-monotone timestamps rejected") {
    const auto path = temp_path("ohlc_order.csv");
    write_text_file(path,
                    "date,open,high,low,close,volume\n"
                    "2020-01-03,10,12,9,11,100\n"
                    "2020-01-02,10,12,9,11,100\n");
    CHECK_THROWS_AS(data::load_ohlc_csv(path, data::Resolution::daily), DataError);
}

TEST_CASE("ohlc csv: malformed number reports line") {
    const auto path = temp_path("ohlc_mal.csv");
    write_text_file(path,
                    "date,open,high,low,close,volume\n"
                    "2020-01-02,10,12,9,abc,100\n");
    CHECK_THROWS_WITH_AS(data::load_ohlc_csv(path, data::Resolution::daily),
                         doctest::Contains(":2"), DataError);
}

TEST_CASE("macro csv round trip and ordering") {
    const auto path = temp_path("macro.csv");
    write_text_file(path,
                    "period,gdp,cpi,ppi,unemployment,inflation\n"
                    "2020-01,21000,257.9,199.1,3.5,2.3\n"
                    "2020-02,21050,258.2,199.0,3.6,2.2\n");
    const auto records = data::load_macro_csv(path);
    REQUIRE(records.size() == 2);
    CHECK(records[0].period == YearMonth{2020, 1});
    CHECK(records[1].cpi == doctest::Approx(258.2));

    write_text_file(path,
                    "period,gdp,cpi,ppi,unemployment,inflation\n"
                    "2020-02,1,2,3,4,5\n"
                    "2020-02,1,2,3,4,5\n");
    CHECK_THROWS_AS(data::load_macro_csv(path), DataError);
}

TEST_CASE("standardize: [1,2,3] with population sigma") {
    const std::vector<double> v{1.0, 2.0, 3.0};
    const auto s = data::standardize(v, "x");
    CHECK(s.stats.mean == doctest::Approx(2.0));
    CHECK(s.stats.std == doctest::Approx(0.816496580927726));
    CHECK(s.values[0] == doctest::Approx(-1.224744871391589));
    CHECK(s.values[1] == doctest::Approx(0.0));
    CHECK(s.values[2] == doctest::Approx(1.224744871391589));
}

TEST_CASE("standardize: constant series is degenerate") {
    const std::vector<double> v{5.0, 5.0, 5.0};
    CHECK_THROWS_AS(data::standardize(v), NumericError);
}

TEST_CASE("standardize: round trip identity") {
    const std::vector<double> v{3.1, 4.7, 9.0};
    const auto s = data::standardize(v);
    const auto back = data::destandardize(s);
    for (std::size_t i = 0; i < v.size(); ++i)
        CHECK(std::fabs(back[i] - v[i]) <= 1e-9 * std::fabs(v[i]));
}

TEST_CASE("standardize: fitted z-scores have zero mean and unit std") {
    Rng rng(7);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> v(40);
        for (auto& x : v) x = rng.uniform(-100.0, 100.0);
        const auto s = data::standardize(v);
        double mean = 0.0;
        for (double z : s.values) mean += z;
        mean /= static_cast<double>(v.size());
        double var = 0.0;
        for (double z : s.values) var += (z - mean) * (z - mean);
        var /= static_cast<double>(v.size());
        CHECK(std::fabs(mean) < 1e-9);
        CHECK(std::fabs(std::sqrt(var) - 1.0) < 1e-9);
    }
}

TEST_CASE("make_splits: n=100 k=4 test_frac=0.10") {
    const auto split = data::make_splits(100, 4, 0.10);
    REQUIRE(split.train_folds.size() == 4);
    CHECK(split.train_folds[0].size() == 23);
    CHECK(split.train_folds[1].size() == 23);
    CHECK(split.train_folds[2].size() == 22);
    CHECK(split.train_folds[3].size() == 22);
    REQUIRE(split.test_indices.size() == 10);
    CHECK(split.test_indices.front() == 90);
    CHECK(split.test_indices.back() == 99);

    // partition: disjoint, complete, test strictly after all folds
    std::set<std::size_t> seen;
    for (const auto& fold : split.train_folds)
        for (auto i : fold) CHECK(seen.insert(i).second);
    for (auto i : split.test_indices) CHECK(seen.insert(i).second);
    CHECK(seen.size() == 100);
    CHECK(*seen.rbegin() == 99);
    for (const auto& fold : split.train_folds)
        for (auto i : fold) CHECK(i < split.test_indices.front());
}

TEST_CASE("make_splits: n=8 k=4 gives folds 2,2,2,1 with test=1") {
    const auto split = data::make_splits(8, 4, 0.10);
    CHECK(split.test_indices.size() == 1);
    CHECK(split.train_folds[0].size() == 2);
    CHECK(split.train_folds[1].size() == 2);
    CHECK(split.train_folds[2].size() == 2);
    CHECK(split.train_folds[3].size() == 1);
}

TEST_CASE("make_splits: too small for k folds") {
    CHECK_THROWS_AS(data::make_splits(4, 4, 0.49), NumericError);
    CHECK_THROWS_AS(data::make_splits(4, 4, 0.5), NumericError);  // frac out of range too
}

TEST_CASE("align_features: 3 bars and one covering aux series give 2 rows") {
    auto bars = testing::linear_daily_bars(3);
    data::AuxSeries aux;
    aux.name = "oil";
    aux.points = {{bars[0].timestamp, 50.0}, {bars[2].timestamp, 52.0}};
    const auto frame = data::align_features(bars, {aux});
    CHECK(frame.features.rows() == 2);
    CHECK(frame.targets.rows() == 2);
    REQUIRE(frame.columns.size() == 5);
    CHECK(frame.columns[4] == "oil");
    // row 0: bar 0's features, target = bar 1's h/l/c
    CHECK(frame.features(0, 0) == doctest::Approx(bars[0].high));
    CHECK(frame.targets(0, 0) == doctest::Approx(bars[1].high));
    CHECK(frame.targets(1, 2) == doctest::Approx(bars[2].close));
    // forward-fill: bar 1 has no own point, carries bar 0's value
    CHECK(frame.features(1, 4) == doctest::Approx(50.0));
    CHECK(frame.latest_row[4] == doctest::Approx(52.0));
}

TEST_CASE("align_features: monthly macro joined to daily bars matches a hand join") {
    auto bars = testing::linear_daily_bars(10, 1000.0, 1.0, {2020, 1, 28});
    // spans Jan 28 .. Feb 10 (trading days); macro published for Jan and Feb
    std::vector<data::MacroRecord> macro = {
        {{2020, 1}, 100.0, 1.0, 2.0, 3.0, 4.0},
        {{2020, 2}, 200.0, 1.5, 2.5, 3.5, 4.5},
    };
    const auto aux = data::macro_to_aux(macro);
    const auto frame = data::align_features(bars, aux);
    const std::size_t gdp_col = 4;  // first macro column after [h,l,c,v]
    for (std::size_t r = 0; r < frame.features.rows(); ++r) {
        const double expected = frame.dates[r].month == 1 ? 100.0 : 200.0;
        CHECK(frame.features(r, gdp_col) == doctest::Approx(expected));
    }
}

TEST_CASE("align_features: aux starting after first bar is an error") {
    auto bars = testing::linear_daily_bars(5);
    data::AuxSeries aux;
    aux.name = "late";
    aux.points = {{bars[2].timestamp, 1.0}};
    CHECK_THROWS_WITH_AS(data::align_features(bars, {aux}), doctest::Contains("late"),
                         DataError);
}

TEST_CASE("alignment never uses future information") {
    // every aux value on a row must be dated at or before the row's bar
    auto bars = testing::linear_daily_bars(30);
    data::AuxSeries aux;
    aux.name = "idx";
    // sparse points every 7th bar
    for (std::size_t i = 0; i < bars.size(); i += 7)
        aux.points.emplace_back(bars[i].timestamp, static_cast<double>(i));
    const auto frame = data::align_features(bars, {aux});
    for (std::size_t r = 0; r < frame.features.rows(); ++r) {
        const double joined = frame.features(r, 4);
        // joined value i means it was published at bar index i (<= r)
        CHECK(joined <= static_cast<double>(r));
    }
}

TEST_CASE("aggregate_monthly folds daily bars into calendar months") {
    auto bars = testing::linear_daily_bars(40, 1000.0, 1.0, {2020, 1, 20});
    const auto monthly = data::aggregate_monthly(bars);
    REQUIRE(monthly.size() >= 2);
    CHECK(YearMonth::of(monthly[0].timestamp) == YearMonth{2020, 1});
    CHECK(YearMonth::of(monthly[1].timestamp) == YearMonth{2020, 2});
    double vol = 0.0;
    double high = 0.0;
    for (const auto& b : bars)
        if (YearMonth::of(b.timestamp) == YearMonth{2020, 2}) {
            vol += b.volume;
            high = std::max(high, b.high);
        }
    CHECK(monthly[1].volume == doctest::Approx(vol));
    CHECK(monthly[1].high == doctest::Approx(high));
}
