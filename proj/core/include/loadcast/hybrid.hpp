#pragma once

#include <nlohmann/json_fwd.hpp>
#include <span>
#include <string>
#include <vector>

#include "loadcast/metrics.hpp"
#include "loadcast/series.hpp"

namespace loadcast::hybrid {

enum class Variant { lm, lm_arima, lm_lstm, lm_arima_lstm };

[[nodiscard]] std::string to_string(Variant v);  ///< "LM", "LM+ARIMA", "LM+LSTM", "LM+ARIMA+LSTM"
[[nodiscard]] Variant parse_variant(const std::string& s);
[[nodiscard]] std::vector<Variant> all_variants();

struct HybridPlan {
    Variant variant = Variant::lm_lstm;
    double arima_weight = 1.0;
    double lstm_weight = 1.0;

    bool operator==(const HybridPlan&) const = default;
};

/// Residual forecasts aligned with the LM forecast; a member may be empty
/// when no variant needs it.
struct ResidualForecasts {
    std::vector<double> arima;
    std::vector<double> lstm;
};

/// LM + w_a ARIMA, LM + w_l LSTM, or LM + (w_a ARIMA + w_l LSTM) / 2.
/// Throws AlignmentError when a required residual forecast has the wrong length.
[[nodiscard]] std::vector<double> combine(std::span<const double> lm_forecast, const ResidualForecasts& residuals,
                                          const HybridPlan& plan);

struct HybridCandidate {
    HybridPlan plan;
    std::vector<double> forecast;
};

struct ComparisonRow {
    std::string name;
    MetricReport metrics;
};

struct HybridSelection {
    HybridPlan best;
    std::vector<ComparisonRow> table;  ///< ascending residual-sum ratio, then MASE, then name

    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] std::string to_csv() const;
};

/// Ranks candidates by residual-sum ratio against the LM candidate (or, when
/// there is none, the candidate with the largest residual sum), then by MASE.
/// Requires at least two candidates aligned with `actual`.
[[nodiscard]] HybridSelection select_hybrid(std::span<const HybridCandidate> candidates,
                                            std::span<const double> actual, std::span<const double> scaling,
                                            ResidualSum kind = ResidualSum::absolute);

/// Hourly sum of long-term, mid-term and short-term components.
[[nodiscard]] HourlySeries assemble_full_forecast(const YearlySeries& long_term, const DailySeries& mid_term,
                                                  const HourlySeries& short_term);

}  // namespace loadcast::hybrid
