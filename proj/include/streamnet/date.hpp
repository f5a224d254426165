#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace streamnet {

// Calendar date stored as a proleptic-Gregorian day count (days since
// 1970-01-01). Only daily resolution is supported.
class Date {
public:
    Date() = default;

    static Date from_serial(std::int64_t days) {
        Date d;
        d.days_ = days;
        return d;
    }

    static Date from_ymd(int year, int month, int day);

    // Strict ISO-8601 "YYYY-MM-DD"; throws ValidationError otherwise.
    static Date parse(const std::string& iso);

    std::string to_string() const;

    std::int64_t serial() const { return days_; }

    Date operator+(std::int64_t days) const { return from_serial(days_ + days); }
    std::int64_t operator-(const Date& other) const { return days_ - other.days_; }

    auto operator<=>(const Date&) const = default;

private:
    std::int64_t days_ = 0;
};

} // namespace streamnet
