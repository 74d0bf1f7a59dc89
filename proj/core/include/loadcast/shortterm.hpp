#pragma once

#include <array>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "loadcast/arima.hpp"
#include "loadcast/correlogram.hpp"
#include "loadcast/regression.hpp"
#include "loadcast/series.hpp"

namespace loadcast::shortterm {

/// "ToH_00" .. "ToH_22"; hour 23 is the base level.
[[nodiscard]] std::vector<std::string> hour_dummy_names();

struct ShorttermConfig {
    int max_p = 27;                  ///< cap on the ACF/PACF-derived p bound
    int max_q = 26;
    std::size_t max_lag = 48;        ///< correlogram depth
    std::size_t holdout_hours = 168; ///< tail of each month's residuals used to rank orders
    std::optional<arima::OrderBounds> fixed_orders;  ///< skip the search and fit these (p, q)
    arima::FitOptions fit{.css_only = true};
    unsigned jobs = 1;
};

struct MonthResidualModel {
    unsigned month = 0;  ///< 1..12
    arima::ArimaModel model;
    arima::OrderBounds bounds;
    double adf_p = 0.0;
    double kpss_p = 0.0;
    bool stationary = false;  ///< ADF rejects at 5 % and KPSS does not
    std::vector<double> block;  ///< residual forecast tiled over every forecast day
    bool block_exceeds_lag_order = false;
};

/// One hourly-dummy regression per (month, weekday) and one ARMA residual
/// model per month.
struct ProfileModelSet {
    std::array<std::array<regression::LinearModel, 7>, 12> cells;  ///< [month - 1][weekday, 0 = Sunday]
    std::array<MonthResidualModel, 12> residual_models;

    [[nodiscard]] const regression::LinearModel& cell(unsigned month, unsigned weekday) const;
    /// Regression profile value for an hour.
    [[nodiscard]] double profile(Hour h) const;

    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] static ProfileModelSet from_json(const nlohmann::json& j);
};

/// Fits the 84 profile regressions on the short-term component and the
/// monthly ARMA models on their pooled residuals (d = 0). Throws DataError
/// ("coverage: ...") when a (month, weekday) pair occurs on fewer than two days.
[[nodiscard]] ProfileModelSet fit_profiles(const HourlySeries& short_term, const ShorttermConfig& config = {});

/// Regression profile plus the month's tiled residual block for every hour in
/// [from, to). Both bounds must be at midnight.
[[nodiscard]] HourlySeries predict_profile(const ProfileModelSet& models, Hour from, Hour to);

/// 24 * max(1, floor(max(p, q) / 24)).
[[nodiscard]] std::size_t tile_block_length(int p, int q);

}  // namespace loadcast::shortterm
