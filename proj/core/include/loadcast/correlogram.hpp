#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace loadcast::arima {

struct Correlogram {
    std::vector<double> values;     ///< indexed by lag; values[0] == 1
    std::vector<bool> significant;  ///< |value| > bound; lag 0 never flagged
    double bound = 0.0;             ///< 1.96 / sqrt(n)

    /// Largest flagged lag, 0 if none.
    [[nodiscard]] std::size_t highest_significant_lag() const;
};

/// Sample autocorrelation up to max_lag. Requires max_lag < n/2.
[[nodiscard]] Correlogram acf(std::span<const double> x, std::size_t max_lag);
/// Partial autocorrelation by Durbin-Levinson. Requires max_lag < n/2.
[[nodiscard]] Correlogram pacf(std::span<const double> x, std::size_t max_lag);

struct OrderBounds {
    int p_max = 1;
    int q_max = 1;
};

/// Highest significant PACF lag as p bound, highest significant ACF lag as q
/// bound (each at least 1).
[[nodiscard]] OrderBounds suggest_orders(std::span<const double> x, std::size_t max_lag);

}  // namespace loadcast::arima
