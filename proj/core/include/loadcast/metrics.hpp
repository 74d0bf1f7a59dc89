#pragma once

#include <limits>
#include <nlohmann/json_fwd.hpp>
#include <span>
#include <string>
#include <vector>

namespace loadcast::hybrid {

struct MetricReport {
    static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

    double rmse = 0.0;
    double mae = 0.0;
    double mape = kNaN;                ///< percent; NaN when not requested
    double mase = kNaN;                ///< NaN without a scaling series
    double residual_sum_ratio = kNaN;  ///< percent of the baseline residual sum

    [[nodiscard]] nlohmann::json to_json() const;
};

/// RMSE, MAE, optional MAPE and MASE. MASE divides by the mean absolute
/// one-step naive difference of `scaling` (in-sample training actuals); pass
/// an empty span to skip it. MAPE throws DegenerateInputError on a zero actual.
[[nodiscard]] MetricReport metrics(std::span<const double> actual, std::span<const double> predicted,
                                   std::span<const double> scaling = {}, bool with_mape = true);

/// mean |y_t - y_{t-1}|; throws std::invalid_argument for fewer than two values
/// and DegenerateInputError when it is zero.
[[nodiscard]] double naive_scale(std::span<const double> scaling);

enum class ResidualSum { absolute, squared };

/// 100 * sum|hybrid| / sum|baseline| (or with squares).
[[nodiscard]] double residual_sum_ratio(std::span<const double> baseline_residuals,
                                        std::span<const double> hybrid_residuals,
                                        ResidualSum kind = ResidualSum::absolute);

}  // namespace loadcast::hybrid
