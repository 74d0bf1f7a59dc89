#include "loadcast/stationarity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

#include "loadcast/error.hpp"

namespace loadcast::arima {

namespace {

constexpr std::size_t kMinLength = 20;

void check_sample(std::span<const double> x, const char* who) {
    if (x.size() < kMinLength) {
        throw std::invalid_argument(std::string(who) + ": need at least 20 observations, got " +
                                    std::to_string(x.size()));
    }
    for (double v : x) {
        if (!std::isfinite(v)) throw std::invalid_argument(std::string(who) + ": non-finite value");
    }
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    if (*hi - *lo <= 1e-12 * std::max(1.0, std::abs(*hi))) {
        throw DegenerateInputError(std::string(who) + ": constant series");
    }
}

double polyval(std::span<const double> c, double x) {
    double r = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

// MacKinnon (2010) finite-sample critical values, constant-only, one variable.
constexpr std::array<std::array<double, 4>, 3> kAdfCrit{{
    {-3.43035, -6.5393, -16.786, -79.433},
    {-2.86154, -2.8903, -4.234, -40.040},
    {-2.56677, -1.5384, -2.809, 0.0},
}};

}  // namespace

double adf_pvalue(double statistic) {
    constexpr double tau_max = 2.74;
    constexpr double tau_min = -18.83;
    constexpr double tau_star = -1.61;
    constexpr std::array<double, 3> small{2.1659, 1.4412, 0.038269};
    constexpr std::array<double, 4> large{1.7339, 0.93202, -0.12745, -0.010368};
    if (statistic > tau_max) return 1.0;
    if (statistic < tau_min) return 0.0;
    const double z = statistic <= tau_star ? polyval(small, statistic) : polyval(large, statistic);
    return boost::math::cdf(boost::math::normal(), z);
}

UnitRootTest adf_test(std::span<const double> x) {
    check_sample(x, "adf_test");
    const std::size_t n = x.size();
    std::size_t lags = static_cast<std::size_t>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
    // Keep enough residual degrees of freedom on short samples.
    while (lags > 0 && n - lags - 1 < 2 * (lags + 2) + 2) --lags;

    std::vector<double> dx(n - 1);
    for (std::size_t t = 1; t < n; ++t) dx[t - 1] = x[t] - x[t - 1];

    const std::size_t nobs = n - 1 - lags;
    const auto k = static_cast<Eigen::Index>(lags + 2);
    Eigen::MatrixXd z(static_cast<Eigen::Index>(nobs), k);
    Eigen::VectorXd y(static_cast<Eigen::Index>(nobs));
    for (std::size_t r = 0; r < nobs; ++r) {
        const std::size_t t = r + lags;  // index into dx
        const auto row = static_cast<Eigen::Index>(r);
        y(row) = dx[t];
        z(row, 0) = x[t];  // level y_{t-1} relative to dx[t] = x[t+1] - x[t]
        z(row, 1) = 1.0;
        for (std::size_t i = 1; i <= lags; ++i) z(row, static_cast<Eigen::Index>(i + 1)) = dx[t - i];
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(z);
    if (qr.rank() < k) throw DegenerateInputError("adf_test: singular regression");
    const Eigen::VectorXd beta = qr.solve(y);
    const Eigen::VectorXd resid = y - z * beta;
    const double s2 = resid.squaredNorm() / static_cast<double>(static_cast<Eigen::Index>(nobs) - k);
    const Eigen::MatrixXd xtx_inv = (z.transpose() * z).inverse();
    const double se = std::sqrt(s2 * xtx_inv(0, 0));
    if (!(se > 0.0)) throw DegenerateInputError("adf_test: zero residual variance");

    UnitRootTest out;
    out.statistic = beta(0) / se;
    out.p_value = adf_pvalue(out.statistic);
    out.lags = lags;
    out.nobs = nobs;
    const double inv = 1.0 / static_cast<double>(nobs);
    out.critical_1 = polyval(kAdfCrit[0], inv);
    out.critical_5 = polyval(kAdfCrit[1], inv);
    out.critical_10 = polyval(kAdfCrit[2], inv);
    return out;
}

UnitRootTest kpss_test(std::span<const double> x) {
    check_sample(x, "kpss_test");
    const std::size_t n = x.size();
    const auto nd = static_cast<double>(n);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= nd;
    std::vector<double> e(n);
    for (std::size_t t = 0; t < n; ++t) e[t] = x[t] - mean;

    double eta = 0.0;
    double s = 0.0;
    for (double v : e) {
        s += v;
        eta += s * s;
    }
    eta /= nd * nd;

    const auto lags = static_cast<std::size_t>(std::trunc(4.0 * std::pow(nd / 100.0, 0.25)));
    double lrv = 0.0;
    for (double v : e) lrv += v * v;
    for (std::size_t l = 1; l <= lags; ++l) {
        double acc = 0.0;
        for (std::size_t t = l; t < n; ++t) acc += e[t] * e[t - l];
        lrv += 2.0 * (1.0 - static_cast<double>(l) / static_cast<double>(lags + 1)) * acc;
    }
    lrv /= nd;
    if (!(lrv > 0.0)) throw DegenerateInputError("kpss_test: non-positive long-run variance");

    UnitRootTest out;
    out.statistic = eta / lrv;
    out.lags = lags;
    out.nobs = n;
    out.critical_10 = 0.347;
    out.critical_5 = 0.463;
    out.critical_1 = 0.739;
    constexpr std::array<double, 4> crit{0.347, 0.463, 0.574, 0.739};
    constexpr std::array<double, 4> pv{0.10, 0.05, 0.025, 0.01};
    if (out.statistic <= crit.front()) {
        out.p_value = pv.front();
    } else if (out.statistic >= crit.back()) {
        out.p_value = pv.back();
    } else {
        std::size_t i = 1;
        while (out.statistic > crit[i]) ++i;
        const double w = (out.statistic - crit[i - 1]) / (crit[i] - crit[i - 1]);
        out.p_value = pv[i - 1] + w * (pv[i] - pv[i - 1]);
    }
    return out;
}

std::vector<double> difference(std::span<const double> x, int d) {
    if (d < 0) throw std::invalid_argument("difference: negative order");
    std::vector<double> v(x.begin(), x.end());
    for (int k = 0; k < d; ++k) {
        if (v.empty()) throw std::invalid_argument("difference: series too short");
        for (std::size_t t = 0; t + 1 < v.size(); ++t) v[t] = v[t + 1] - v[t];
        v.pop_back();
    }
    return v;
}

std::vector<double> integrate(std::span<const double> diffs, std::span<const double> anchors) {
    if (anchors.empty()) return {diffs.begin(), diffs.end()};
    // The first difference of the output has the successive differences of
    // the anchors as its own anchors.
    const std::vector<double> w = integrate(diffs, difference(anchors, 1));
    // w is the first difference of the output, starting at index 0.
    std::vector<double> out;
    out.reserve(w.size() + 1);
    out.push_back(anchors[0]);
    for (double v : w) out.push_back(out.back() + v);
    return out;
}

int select_d(std::span<const double> x, int max_d) {
    if (max_d < 0) throw std::invalid_argument("select_d: negative max_d");
    if (x.size() < kMinLength + static_cast<std::size_t>(max_d)) {
        throw std::invalid_argument("select_d: series too short");
    }
    for (int d = 0; d <= max_d; ++d) {
        const auto w = difference(x, d);
        if (kpss_test(w).statistic < 0.463) return d;
    }
    throw FitError("select_d: series is not stationary after " + std::to_string(max_d) + " differences");
}

}  // namespace loadcast::arima
