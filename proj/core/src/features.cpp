#include "loadcast/features.hpp"

#include <algorithm>
#include <cstdio>

#include "loadcast/error.hpp"

namespace loadcast::features {

namespace chr = std::chrono;

DegreeDays heating_cooling(double temp_c, double t_ref) {
    return {std::max(t_ref - temp_c, 0.0), std::max(temp_c - t_ref, 0.0)};
}

regression::DesignMatrix build_longterm_design(const ingest::MacroTable& macro,
                                               std::span<const std::string> indicators,
                                               ingest::YearRange years,
                                               const std::optional<YearlySeries>& response) {
    if (years.last < years.first) throw RangeError("build_longterm_design: empty year range");
    const auto rows = static_cast<Eigen::Index>(years.last - years.first + 1);
    Eigen::MatrixXd x(rows, static_cast<Eigen::Index>(indicators.size()));
    for (std::size_t j = 0; j < indicators.size(); ++j) {
        if (!macro.contains(indicators[j])) {
            throw DataError("coverage: macro indicator '" + indicators[j] + "' is not available");
        }
        const auto& s = macro.at(indicators[j]);
        for (int y = years.first; y <= years.last; ++y) {
            if (!s.covers(y)) {
                throw DataError("coverage: macro indicator '" + indicators[j] + "' has no value for " +
                                std::to_string(y));
            }
            x(y - years.first, static_cast<Eigen::Index>(j)) = s.at(y);
        }
    }
    Eigen::VectorXd y;
    if (response) {
        y.resize(rows);
        for (int yr = years.first; yr <= years.last; ++yr) {
            if (!response->covers(yr)) {
                throw DataError("coverage: yearly load has no value for " + std::to_string(yr));
            }
            y[yr - years.first] = response->at(yr);
        }
    }
    return regression::DesignMatrix({indicators.begin(), indicators.end()}, x, std::move(y));
}

const std::vector<std::string>& weekday_dummy_names() {
    static const std::vector<std::string> names{"ToD_Mon", "ToD_Tue", "ToD_Wed",
                                                "ToD_Thu", "ToD_Fri", "ToD_Sat"};
    return names;
}

std::string month_dummy_name(unsigned month) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "ToM_%02u", month);
    return buf;
}

const std::vector<unsigned>& default_midterm_months() {
    static const std::vector<unsigned> months{3, 4, 6, 8, 10};
    return months;
}

regression::DesignMatrix build_midterm_candidates(const ingest::TemperatureSeries& temp,
                                                  const ingest::HolidaySet& holidays, Date from, Date to,
                                                  const std::optional<DailySeries>& response,
                                                  double t_ref) {
    if (to <= from) throw RangeError("build_midterm_candidates: empty date range");
    if (!temp.covers(from - chr::days{2}, to)) {
        throw RangeError("temperature must cover " + format_iso_date(from - chr::days{2}) + " to " +
                         format_iso_date(to - chr::days{1}) + " (two-day lag lead-in)");
    }
    std::vector<std::string> names{"T",  "T_lag1", "T_lag2", "HD",     "HD2",     "HD3",     "HD_lag1",
                                   "HD_lag2", "CD", "CD2",    "CD3",    "CD_lag1", "CD_lag2", "H"};
    for (const auto& n : weekday_dummy_names()) names.push_back(n);
    for (unsigned m = 1; m <= 11; ++m) names.push_back(month_dummy_name(m));

    const auto rows = static_cast<Eigen::Index>((to - from).count());
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(names.size()));
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Date d = from + chr::days{r};
        const double t0 = temp.at(d);
        const double t1 = temp.at(d - chr::days{1});
        const double t2 = temp.at(d - chr::days{2});
        const auto dd0 = heating_cooling(t0, t_ref);
        const auto dd1 = heating_cooling(t1, t_ref);
        const auto dd2 = heating_cooling(t2, t_ref);
        x(r, 0) = t0;
        x(r, 1) = t1;
        x(r, 2) = t2;
        x(r, 3) = dd0.heating;
        x(r, 4) = dd0.heating * dd0.heating;
        x(r, 5) = dd0.heating * dd0.heating * dd0.heating;
        x(r, 6) = dd1.heating;
        x(r, 7) = dd2.heating;
        x(r, 8) = dd0.cooling;
        x(r, 9) = dd0.cooling * dd0.cooling;
        x(r, 10) = dd0.cooling * dd0.cooling * dd0.cooling;
        x(r, 11) = dd1.cooling;
        x(r, 12) = dd2.cooling;
        x(r, 13) = holidays.contains(d) ? 1.0 : 0.0;
        const unsigned wd = weekday_of(d);  // 0 = Sunday
        if (wd >= 1) x(r, 13 + static_cast<Eigen::Index>(wd)) = 1.0;
        const unsigned m = month_of(d);
        if (m <= 11) x(r, 19 + static_cast<Eigen::Index>(m)) = 1.0;
    }
    Eigen::VectorXd y;
    if (response) {
        if (!response->covers(from, to)) {
            throw RangeError("daily response does not cover " + format_iso_date(from) + " to " +
                             format_iso_date(to - chr::days{1}));
        }
        y.resize(rows);
        const std::size_t first = *response->index_of(from);
        for (Eigen::Index r = 0; r < rows; ++r) y[r] = (*response)[first + static_cast<std::size_t>(r)];
    }
    return regression::DesignMatrix(std::move(names), x, std::move(y));
}

std::vector<std::string> midterm_model_columns(std::span<const unsigned> months) {
    std::vector<std::string> cols{"T",  "T_lag2", "CD2", "CD3",     "CD_lag2",
                                  "HD", "HD2",    "HD3", "HD_lag2", "H"};
    for (const auto& n : weekday_dummy_names()) cols.push_back(n);
    for (unsigned m : months) {
        if (m < 1 || m > 11) throw std::invalid_argument("month dummies exist for months 1..11 only");
        cols.push_back(month_dummy_name(m));
    }
    return cols;
}

regression::DesignMatrix build_midterm_design(const ingest::TemperatureSeries& temp,
                                              const ingest::HolidaySet& holidays, Date from, Date to,
                                              const std::optional<DailySeries>& response,
                                              std::span<const unsigned> months) {
    const auto cols = midterm_model_columns(months);
    return build_midterm_candidates(temp, holidays, from, to, response).select(cols);
}

}  // namespace loadcast::features
