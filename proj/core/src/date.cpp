#include "goldcast/date.hpp"

#include <cctype>
#include <cstdio>

#include "goldcast/errors.hpp"

namespace goldcast {

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int parse_int(const std::string& s, std::size_t pos, std::size_t len) {
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) return -1;
        v = v * 10 + (s[i] - '0');
    }
    return v;
}

}  // namespace

int days_in_month(int year, int month) {
    static const int table[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) return 0;
    if (month == 2 && is_leap(year)) return 29;
    return table[month - 1];
}

bool Date::valid() const {
    return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
}

Date Date::parse(const std::string& iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-')
        throw DataError("invalid date '" + iso + "', expected YYYY-MM-DD");
    Date d{parse_int(iso, 0, 4), parse_int(iso, 5, 2), parse_int(iso, 8, 2)};
    if (d.year < 0 || d.month < 0 || d.day < 0 || !d.valid())
        throw DataError("invalid date '" + iso + "'");
    return d;
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

Date Date::next_day() const {
    Date d = *this;
    if (++d.day > days_in_month(d.year, d.month)) {
        d.day = 1;
        if (++d.month > 12) {
            d.month = 1;
            ++d.year;
        }
    }
    return d;
}

YearMonth YearMonth::parse(const std::string& ym) {
    if (ym.size() != 7 || ym[4] != '-')
        throw DataError("invalid period '" + ym + "', expected YYYY-MM");
    YearMonth p{parse_int(ym, 0, 4), parse_int(ym, 5, 2)};
    if (p.year < 0 || p.month < 1 || p.month > 12)
        throw DataError("invalid period '" + ym + "'");
    return p;
}

std::string YearMonth::to_string() const {
    char buf[12];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
    return buf;
}

YearMonth YearMonth::next() const {
    return month == 12 ? YearMonth{year + 1, 1} : YearMonth{year, month + 1};
}

}  // namespace goldcast
