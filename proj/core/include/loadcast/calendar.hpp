#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace loadcast {

/// UTC hour on the system clock.
using Hour = std::chrono::sys_time<std::chrono::hours>;
/// Calendar day on the system clock.
using Date = std::chrono::sys_days;

[[nodiscard]] Date make_date(int year, unsigned month, unsigned day);
[[nodiscard]] Hour make_hour(int year, unsigned month, unsigned day, unsigned hour);

[[nodiscard]] Date date_of(Hour h);
[[nodiscard]] int year_of(Date d);
[[nodiscard]] unsigned month_of(Date d);       // 1..12
[[nodiscard]] unsigned day_of_month(Date d);   // 1..31
[[nodiscard]] unsigned weekday_of(Date d);     // 0 = Sunday .. 6 = Saturday
[[nodiscard]] unsigned hour_of_day(Hour h);    // 0..23

[[nodiscard]] int days_in_year(int year);
[[nodiscard]] int hours_in_year(int year);
[[nodiscard]] Date first_day_of_year(int year);

/// Parses `YYYY-MM-DDTHH[:MM[:SS]]` with optional `Z` or `±HH:MM` offset
/// (a space may replace the `T`). Offsets are folded into UTC. Minutes and
/// seconds must be zero. Throws std::invalid_argument.
[[nodiscard]] Hour parse_iso_hour(std::string_view text);

/// Parses `YYYY-MM-DD`. Throws std::invalid_argument.
[[nodiscard]] Date parse_iso_date(std::string_view text);

/// `YYYY-MM-DDTHH:00:00Z`
[[nodiscard]] std::string format_iso_hour(Hour h);
/// `YYYY-MM-DD`
[[nodiscard]] std::string format_iso_date(Date d);

}  // namespace loadcast
