#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "loadcast/ingest.hpp"
#include "loadcast/regression.hpp"
#include "loadcast/series.hpp"

namespace loadcast::features {

/// Base temperature for heating/cooling degree days [degC].
inline constexpr double kReferenceTemperature = 18.33;

struct DegreeDays {
    double heating = 0.0;  ///< max(t_ref - T, 0)
    double cooling = 0.0;  ///< max(T - t_ref, 0)
};

[[nodiscard]] DegreeDays heating_cooling(double temp_c, double t_ref = kReferenceTemperature);

/// Long-term design: one row per year in `years`, one column per indicator
/// (in the given order). `response`, when given, must cover every year.
/// Throws DataError when an indicator is missing or does not cover a year.
[[nodiscard]] regression::DesignMatrix build_longterm_design(
    const ingest::MacroTable& macro, std::span<const std::string> indicators, ingest::YearRange years,
    const std::optional<YearlySeries>& response = std::nullopt);

/// Weekday dummy names, Monday..Saturday (Sunday is the base level).
[[nodiscard]] const std::vector<std::string>& weekday_dummy_names();
/// Month dummy name for month 1..12, e.g. "ToM_03".
[[nodiscard]] std::string month_dummy_name(unsigned month);

/// Month dummies kept by the fitted daily model on the reference data.
[[nodiscard]] const std::vector<unsigned>& default_midterm_months();

/// Every daily regressor the selection procedure may draw from:
/// T, T_lag1, T_lag2, HD, HD2, HD3, HD_lag1, HD_lag2, CD, CD2, CD3, CD_lag1,
/// CD_lag2, H, ToD_Mon..ToD_Sat and ToM_01..ToM_11. Rows are the days in
/// [from, to); temperature must also cover the two days before `from`
/// (RangeError otherwise). `response`, when given, must cover [from, to).
[[nodiscard]] regression::DesignMatrix build_midterm_candidates(
    const ingest::TemperatureSeries& temp, const ingest::HolidaySet& holidays, Date from, Date to,
    const std::optional<DailySeries>& response = std::nullopt, double t_ref = kReferenceTemperature);

/// Columns of the fitted daily model, in order: T, T_lag2, CD2, CD3, CD_lag2,
/// HD, HD2, HD3, HD_lag2, H, ToD_Mon..ToD_Sat, then one ToM column per entry
/// of `months`.
[[nodiscard]] std::vector<std::string> midterm_model_columns(
    std::span<const unsigned> months = default_midterm_months());

[[nodiscard]] regression::DesignMatrix build_midterm_design(
    const ingest::TemperatureSeries& temp, const ingest::HolidaySet& holidays, Date from, Date to,
    const std::optional<DailySeries>& response = std::nullopt,
    std::span<const unsigned> months = default_midterm_months());

}  // namespace loadcast::features
