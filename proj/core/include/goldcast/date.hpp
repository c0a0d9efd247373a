#pragma once

#include <compare>
#include <string>

namespace goldcast {

/// Calendar date (proleptic Gregorian). Stored as plain fields; ordering is lexicographic.
struct Date {
    int year = 0;
    int month = 0;  // 1..12
    int day = 0;    // 1..31

    auto operator<=>(const Date&) const = default;

    static Date parse(const std::string& iso);  // "YYYY-MM-DD", throws DataError
    std::string to_string() const;
    Date next_day() const;
    bool valid() const;
};

/// Year-month period, used for monthly bars and macro releases.
struct YearMonth {
    int year = 0;
    int month = 0;

    auto operator<=>(const YearMonth&) const = default;

    static YearMonth parse(const std::string& ym);  // "YYYY-MM", throws DataError
    static YearMonth of(const Date& d) { return {d.year, d.month}; }
    std::string to_string() const;
    YearMonth next() const;
    Date first_day() const { return {year, month, 1}; }
};

int days_in_month(int year, int month);

}  // namespace goldcast
