#pragma once

#include "loadcast/series.hpp"

namespace loadcast {

/// Additive split of hourly load into a yearly level, a daily deviation from
/// that level and an hourly deviation from the day's mean:
///
///     load(h) = long(year(h)) + mid(day(h)) + short(h)
///
/// Calendars are true UTC calendars: leap years keep Feb 29 (8784 hours).
struct Decomposition {
    YearlySeries long_term;   ///< mean hourly load per calendar year [MW]
    DailySeries mid_term;     ///< daily mean minus the year's mean [MW]
    HourlySeries short_term;  ///< hourly value minus day and year means [MW]
};

/// Mean of all hourly values in calendar `year`. Throws RangeError unless the
/// whole year is covered.
[[nodiscard]] double yearly_hourly_mean(const HourlySeries& series, int year);

/// Mean of the 24 values of `date`. Throws RangeError on a partial day.
[[nodiscard]] double daily_hourly_mean(const HourlySeries& series, Date date);

/// Daily means over the whole days in [from, to).
[[nodiscard]] DailySeries daily_means(const HourlySeries& series, Date from, Date to);

/// Requires the series to span whole calendar years (Jan 1 00:00 to
/// Dec 31 23:00). Throws RangeError otherwise.
[[nodiscard]] Decomposition decompose(const HourlySeries& series);

/// Inverse of decompose. Throws AlignmentError when the mid component does
/// not cover exactly the days of the short component or the long component
/// misses a year.
[[nodiscard]] HourlySeries recompose(const Decomposition& dec);

/// Element-wise long + mid + short over the hours of `short_term`; mid must
/// cover every day touched and long every year. Used for forecasts that need
/// not start on Jan 1.
[[nodiscard]] HourlySeries recompose(const YearlySeries& long_term, const DailySeries& mid_term,
                                     const HourlySeries& short_term);

}  // namespace loadcast
