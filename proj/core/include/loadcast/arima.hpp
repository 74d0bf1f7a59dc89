#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <nlohmann/json_fwd.hpp>
#include <span>
#include <string>
#include <vector>

#include "loadcast/error.hpp"

namespace loadcast::arima {

/// Exogenous regressors, one row per time step.
struct Exogenous {
    std::vector<std::string> names;
    Eigen::MatrixXd values;

    [[nodiscard]] std::size_t rows() const noexcept { return static_cast<std::size_t>(values.rows()); }
    /// Rows [begin, begin + count).
    [[nodiscard]] Exogenous slice(std::size_t begin, std::size_t count) const;
    /// Columns reordered/subset by name.
    [[nodiscard]] Exogenous select(std::span<const std::string> wanted) const;
};

struct ArimaSpec {
    int p = 0;
    int d = 0;
    int q = 0;
    std::vector<std::string> xreg;
    /// Intercept when d == 0, drift when d == 1. Not allowed with d == 2.
    bool constant = true;

    /// Throws std::invalid_argument on negative orders, d > 2, an empty model
    /// or a constant with d == 2.
    void validate() const;
    [[nodiscard]] std::string label() const;  ///< "ARIMA(p,d,q)"
    bool operator==(const ArimaSpec&) const = default;
};

struct FitOptions {
    bool css_only = false;  ///< skip the exact-likelihood refinement
    int max_iterations = 500;
    double rel_tolerance = 1e-8;
};

/// Fitted ARIMA(p,d,q) with regression on exogenous columns:
///   (1 - B)^d y_t = c + (1 - B)^d x_t' beta + u_t,
///   u_t = sum phi_i u_{t-i} + e_t + sum theta_j e_{t-j}.
struct ArimaModel {
    ArimaSpec spec;
    std::vector<double> ar;    ///< phi_1..phi_p
    std::vector<double> ma;    ///< theta_1..theta_q
    std::vector<double> beta;  ///< in spec.xreg order
    double constant = 0.0;
    double sigma2 = 0.0;
    double log_likelihood = 0.0;
    double aic = 0.0;
    double aicc = 0.0;
    std::size_t nobs = 0;  ///< length of the differenced training sample
    std::string method;    ///< "CSS" or "CSS-ML"
    bool converged = true;
    bool near_unit_root_ma = false;
    int iterations = 0;

    std::vector<double> residuals;  ///< one-step innovations on the differenced sample
    // Forecast origin.
    std::vector<double> state;        ///< predicted ARMA state after the last observation
    std::vector<double> tail_levels;  ///< last d observed levels
    Eigen::MatrixXd tail_xreg;        ///< last d rows of the exogenous levels

    /// Number of estimated parameters including sigma^2.
    [[nodiscard]] std::size_t parameter_count() const;
    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] static ArimaModel from_json(const nlohmann::json& j);
};

/// Non-convergence of the estimator; carries the best solution reached
/// (the CSS solution when the likelihood phase fails).
class ArimaFitError : public FitError {
public:
    ArimaFitError(const std::string& what, ArimaModel fallback)
        : FitError(what), fallback_(std::move(fallback)) {}
    [[nodiscard]] const ArimaModel& fallback() const noexcept { return fallback_; }

private:
    ArimaModel fallback_;
};

/// Conditional sum of squares for starting values, then exact Gaussian
/// likelihood through a Kalman filter on the state-space form. AR and MA
/// polynomials are kept stationary/invertible by a partial-autocorrelation
/// reparameterisation. `xreg` must have y.size() rows and contain the
/// spec.xreg columns.
[[nodiscard]] ArimaModel fit_arima(std::span<const double> y, const ArimaSpec& spec,
                                   const Exogenous* xreg = nullptr, const FitOptions& options = {});

/// Re-run the filter with fixed coefficients over a (typically longer) series
/// so that forecasts start after its last observation.
[[nodiscard]] ArimaModel condition_on(const ArimaModel& model, std::span<const double> y,
                                      const Exogenous* xreg = nullptr);

struct IntervalForecast {
    std::vector<double> point;
    std::vector<double> se;
    std::vector<double> levels;              ///< e.g. 0.80, 0.95
    std::vector<std::vector<double>> lower;  ///< [level][step]
    std::vector<std::vector<double>> upper;

    [[nodiscard]] std::size_t horizon() const noexcept { return point.size(); }
};

/// h-step forecast with psi-weight standard errors. `future_xreg` must hold h
/// rows with the model's exogenous columns when the model has any.
[[nodiscard]] IntervalForecast forecast(const ArimaModel& model, std::size_t h,
                                        std::span<const double> levels = {},
                                        const Exogenous* future_xreg = nullptr);

/// psi_0..psi_{count-1} of phi(B)(1-B)^d psi(B) = theta(B).
[[nodiscard]] std::vector<double> psi_weights(const ArimaModel& model, std::size_t count);

/// Exact Gaussian log-likelihood of an ARMA(p,q) sample with unit-free
/// concentrated variance; exposed for tests and benchmarks.
struct ArmaLikelihood {
    double log_likelihood = 0.0;
    double sigma2 = 0.0;
};
[[nodiscard]] ArmaLikelihood arma_likelihood(std::span<const double> u, std::span<const double> ar,
                                             std::span<const double> ma);

/// Map unconstrained values to the coefficients of a stationary AR polynomial
/// 1 - a_1 B - ... - a_k B^k (tanh of partial autocorrelations).
[[nodiscard]] std::vector<double> pacf_to_coefficients(std::span<const double> unconstrained);

}  // namespace loadcast::arima
