#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace loadcast::arima {

struct UnitRootTest {
    double statistic = 0.0;
    double p_value = 0.0;
    std::size_t lags = 0;
    std::size_t nobs = 0;
    double critical_1 = 0.0;
    double critical_5 = 0.0;
    double critical_10 = 0.0;
};

/// Augmented Dickey-Fuller test with a constant and the Schwert lag rule
/// floor(12 (n/100)^(1/4)). p-value from the MacKinnon response surface.
/// Null: unit root. Requires n >= 20; constant input is degenerate.
[[nodiscard]] UnitRootTest adf_test(std::span<const double> x);

/// KPSS level-stationarity test, Bartlett long-run variance with
/// trunc(4 (n/100)^(1/4)) lags. p-value interpolated in the standard table and
/// clamped to [0.01, 0.10]. Null: stationary.
[[nodiscard]] UnitRootTest kpss_test(std::span<const double> x);

/// MacKinnon (1994) asymptotic p-value for the constant-only ADF statistic.
[[nodiscard]] double adf_pvalue(double statistic);

/// d-th difference; result has x.size() - d elements.
[[nodiscard]] std::vector<double> difference(std::span<const double> x, int d);

/// Inverse of difference: `anchors` are the first d levels (d = anchors.size()).
/// Returns anchors followed by the reconstructed levels, so that
/// difference(integrate(x, anchors), d) == x.
[[nodiscard]] std::vector<double> integrate(std::span<const double> diffs, std::span<const double> anchors);

/// Smallest d in [0, max_d] whose d-times differenced series passes KPSS at
/// 5 %. Throws FitError when none does.
[[nodiscard]] int select_d(std::span<const double> x, int max_d = 2);

}  // namespace loadcast::arima
