#include "goldcast/data/csv.hpp"

#include <algorithm>
#include <fstream>

#include "goldcast/errors.hpp"
#include "goldcast/textio.hpp"

namespace goldcast::data {

namespace {

struct CsvReader {
    std::ifstream in;
    std::string path;
    int line_no = 0;

    CsvReader(const std::string& p, const std::string& expected_header) : in(p), path(p) {
        if (!in) throw DataError("cannot open: " + p);
        std::string header;
        if (!std::getline(in, header))
            throw DataError(p + ": empty file");
        ++line_no;
        if (trim(header) != expected_header)
            throw DataError(p + ":1: expected header '" + expected_header + "', got '" +
                            trim(header) + "'");
    }

    bool next(std::vector<std::string>& fields, std::size_t n_fields) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            if (trim(line).empty()) continue;
            fields = split(line, ',');
            if (fields.size() != n_fields)
                throw DataError(where() + ": expected " + std::to_string(n_fields) +
                                " fields, got " + std::to_string(fields.size()));
            return true;
        }
        return false;
    }

    std::string where() const { return path + ":" + std::to_string(line_no); }
};

}  // namespace

void validate_bar(const OhlcBar& b, const std::string& context) {
    if (b.high < b.low)
        throw DataError(context + ": high " + fmt_g(b.high) + " < low " + fmt_g(b.low));
    if (b.low > std::min(b.open, b.close))
        throw DataError(context + ": low above open/close");
    if (b.high < std::max(b.open, b.close))
        throw DataError(context + ": high below open/close");
    if (b.volume < 0.0)
        throw DataError(context + ": negative volume");
}

std::vector<OhlcBar> load_ohlc_csv(const std::string& path, Resolution resolution) {
    CsvReader reader(path, "date,open,high,low,close,volume");
    std::vector<OhlcBar> bars;
    std::vector<std::string> f;
    while (reader.next(f, 6)) {
        OhlcBar bar;
        try {
            bar.timestamp = Date::parse(trim(f[0]));
        } catch (const DataError& e) {
            throw DataError(reader.where() + ": " + e.what());
        }
        bar.open = parse_double(f[1], reader.where());
        bar.high = parse_double(f[2], reader.where());
        bar.low = parse_double(f[3], reader.where());
        bar.close = parse_double(f[4], reader.where());
        bar.volume = parse_double(f[5], reader.where());
        validate_bar(bar, reader.where());
        if (!bars.empty()) {
            if (bar.timestamp == bars.back().timestamp)
                throw DataError(reader.where() + ": duplicate timestamp " +
                                bar.timestamp.to_string());
            if (bar.timestamp < bars.back().timestamp)
                throw DataError(reader.where() + ": timestamps not ascending");
            if (resolution == Resolution::monthly &&
                YearMonth::of(bar.timestamp) == YearMonth::of(bars.back().timestamp))
                throw DataError(reader.where() + ": two monthly bars in " +
                                YearMonth::of(bar.timestamp).to_string());
        }
        bars.push_back(bar);
    }
    return bars;
}

std::vector<MacroRecord> load_macro_csv(const std::string& path) {
    CsvReader reader(path, "period,gdp,cpi,ppi,unemployment,inflation");
    std::vector<MacroRecord> records;
    std::vector<std::string> f;
    while (reader.next(f, 6)) {
        MacroRecord rec;
        try {
            rec.period = YearMonth::parse(trim(f[0]));
        } catch (const DataError& e) {
            throw DataError(reader.where() + ": " + e.what());
        }
        rec.gdp = parse_double(f[1], reader.where());
        rec.cpi = parse_double(f[2], reader.where());
        rec.ppi = parse_double(f[3], reader.where());
        rec.unemployment = parse_double(f[4], reader.where());
        rec.inflation = parse_double(f[5], reader.where());
        if (!records.empty() && !(records.back().period < rec.period))
            throw DataError(reader.where() + ": periods not strictly increasing");
        records.push_back(rec);
    }
    return records;
}

AuxSeries load_aux_csv(const std::string& path, const std::string& name) {
    CsvReader reader(path, "date,value");
    AuxSeries series;
    series.name = name;
    std::vector<std::string> f;
    while (reader.next(f, 2)) {
        Date d;
        try {
            d = Date::parse(trim(f[0]));
        } catch (const DataError& e) {
            throw DataError(reader.where() + ": " + e.what());
        }
        const double v = parse_double(f[1], reader.where());
        if (!series.points.empty() && !(series.points.back().first < d))
            throw DataError(reader.where() + ": dates not strictly ascending");
        series.points.emplace_back(d, v);
    }
    return series;
}

}  // namespace goldcast::data
