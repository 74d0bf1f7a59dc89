#pragma once

#include <cstddef>
#include <nlohmann/json_fwd.hpp>
#include <span>
#include <string>
#include <vector>

#include "loadcast/arima.hpp"
#include "loadcast/correlogram.hpp"

namespace loadcast::arima {

struct GridOptions {
    int d = 0;
    bool constant = true;
    std::vector<std::string> xreg;  ///< exogenous columns used by every candidate
    FitOptions fit;
    unsigned jobs = 1;
};

struct GridCandidate {
    int p = 0;
    int q = 0;
    bool ok = false;
    bool converged = false;
    std::string error;
    double test_rmse = 0.0;
    double aicc = 0.0;
};

struct GridReport {
    std::vector<GridCandidate> candidates;  ///< p-major order
    std::size_t winner = 0;                 ///< index into candidates

    [[nodiscard]] nlohmann::json to_json() const;
};

struct GridResult {
    ArimaModel best;  ///< fitted on the training range
    GridReport report;
};

/// Fits ARIMA(p, d, q) for p in [1, p_max + 2], q in [1, q_max + 2] on
/// y[0, train_end) and ranks by RMSE of the recursive forecast over
/// y[train_end, y.size()). Ties go to the smaller p + q, then smaller p.
/// Fits that hit the iteration cap take part with their fallback solution.
/// `xreg`, when given, must cover all of y. Throws FitError if every fit fails.
[[nodiscard]] GridResult grid_search(std::span<const double> y, std::size_t train_end, const OrderBounds& bounds,
                                     const GridOptions& options, const Exogenous* xreg = nullptr);

struct ExogenousScreen {
    std::vector<std::string> selected;  ///< candidates whose KS test rejects
    std::vector<std::string> tested;
    std::vector<double> ks_p;           ///< per tested candidate
    std::vector<std::string> skipped;   ///< groups with fewer than 3 members
    double levene_p = 1.0;              ///< across candidate groups and the base group
};

/// Exogenous-regressor screening for indicator columns: the residuals at rows
/// where a candidate is non-zero form its group; the candidate is selected
/// when a two-sample KS test against all residuals rejects at `alpha`.
[[nodiscard]] ExogenousScreen screen_exogenous(std::span<const double> residuals, const Exogenous& candidates,
                                               double alpha = 0.05);

}  // namespace loadcast::arima
