#include "loadcast/decomposition.hpp"

#include <string>

#include "loadcast/error.hpp"

namespace loadcast {

namespace chr = std::chrono;

double yearly_hourly_mean(const HourlySeries& series, int year) {
    const Hour from{first_day_of_year(year)};
    const Hour to{first_day_of_year(year + 1)};
    if (!series.covers(from, to) || series.empty()) {
        throw RangeError("year " + std::to_string(year) + " is not fully covered by the series");
    }
    const std::size_t first = *series.index_of(from);
    const auto count = static_cast<std::size_t>((to - from).count());
    double sum = 0.0;
    for (std::size_t i = first; i < first + count; ++i) sum += series[i];
    return sum / static_cast<double>(count);
}

double daily_hourly_mean(const HourlySeries& series, Date date) {
    const Hour from{date};
    const Hour to = from + chr::hours{24};
    if (!series.covers(from, to) || series.empty()) {
        throw RangeError("day " + format_iso_date(date) + " is not fully covered by the series");
    }
    const std::size_t first = *series.index_of(from);
    double sum = 0.0;
    for (std::size_t i = first; i < first + 24; ++i) sum += series[i];
    return sum / 24.0;
}

DailySeries daily_means(const HourlySeries& series, Date from, Date to) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>((to - from).count()));
    for (Date d = from; d < to; d += chr::days{1}) out.push_back(daily_hourly_mean(series, d));
    return DailySeries(from, std::move(out));
}

Decomposition decompose(const HourlySeries& series) {
    if (series.empty()) throw RangeError("cannot decompose an empty series");
    const Date first_day = date_of(series.start());
    const int first_year = year_of(first_day);
    if (series.start() != Hour{first_day_of_year(first_year)}) {
        throw RangeError("series must start at Jan 1 00:00 of a year, starts at " +
                         format_iso_hour(series.start()));
    }
    const int end_year = year_of(date_of(series.end()));
    if (series.end() != Hour{first_day_of_year(end_year)}) {
        throw RangeError("series must end at Dec 31 23:00 of a year, last hour is " +
                         format_iso_hour(series.end() - chr::hours{1}));
    }

    std::vector<double> yearly;
    for (int y = first_year; y < end_year; ++y) yearly.push_back(yearly_hourly_mean(series, y));
    YearlySeries long_term(first_year, std::move(yearly));

    const Date last_day = date_of(series.end());
    std::vector<double> daily;
    daily.reserve(static_cast<std::size_t>((last_day - first_day).count()));
    std::vector<double> hourly(series.size());
    std::size_t h = 0;
    for (Date d = first_day; d < last_day; d += chr::days{1}) {
        const double level = long_term.at(year_of(d));
        const double day_mean = daily_hourly_mean(series, d);
        daily.push_back(day_mean - level);
        for (int k = 0; k < 24; ++k, ++h) hourly[h] = series[h] - day_mean;
    }
    return Decomposition{std::move(long_term), DailySeries(first_day, std::move(daily)),
                         HourlySeries(series.start(), std::move(hourly))};
}

HourlySeries recompose(const YearlySeries& long_term, const DailySeries& mid_term,
                       const HourlySeries& short_term) {
    std::vector<double> out(short_term.size());
    for (std::size_t i = 0; i < short_term.size(); ++i) {
        const Hour t = short_term.time_at(i);
        const Date d = date_of(t);
        const auto day = mid_term.index_of(d);
        if (!day) {
            throw AlignmentError("mid-term component does not cover " + format_iso_date(d));
        }
        const int y = year_of(d);
        if (!long_term.covers(y)) {
            throw AlignmentError("long-term component does not cover year " + std::to_string(y));
        }
        out[i] = long_term.at(y) + mid_term[*day] + short_term[i];
    }
    return HourlySeries(short_term.start(), std::move(out));
}

HourlySeries recompose(const Decomposition& dec) {
    const auto& s = dec.short_term;
    const auto& m = dec.mid_term;
    if (s.empty()) throw AlignmentError("empty short-term component");
    if (s.start() != Hour{m.start()} || s.end() != Hour{m.end()}) {
        throw AlignmentError("mid-term days [" + format_iso_date(m.start()) + ", " +
                             format_iso_date(m.end()) + ") do not match short-term hours");
    }
    if (year_of(m.start()) != dec.long_term.first_year() ||
        year_of(m.end() - chr::days{1}) != dec.long_term.last_year()) {
        throw AlignmentError("long-term years do not match the daily calendar");
    }
    return recompose(dec.long_term, dec.mid_term, dec.short_term);
}

}  // namespace loadcast
