#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace adrsig {

/// Calendar date with day resolution, stored as days since 1970-01-01.
class Date {
public:
    constexpr Date() = default;
    constexpr explicit Date(std::chrono::sys_days days) : days_(days) {}

    static Date from_days(long long days_since_epoch) {
        return Date(std::chrono::sys_days(std::chrono::days(days_since_epoch)));
    }
    static Date from_ymd(int year, unsigned month, unsigned day);

    /// Strict ISO-8601 calendar date `YYYY-MM-DD`; nullopt when malformed or
    /// not a real calendar day.
    static std::optional<Date> parse(std::string_view text);

    /// Current UTC date.
    static Date today();

    long long days_since_epoch() const { return days_.time_since_epoch().count(); }
    std::chrono::sys_days sys_days() const { return days_; }
    std::string iso() const;

    Date operator+(long long n) const { return from_days(days_since_epoch() + n); }
    long long operator-(Date other) const { return days_since_epoch() - other.days_since_epoch(); }

    friend constexpr auto operator<=>(const Date&, const Date&) = default;

private:
    std::chrono::sys_days days_{};
};

}  // namespace adrsig
