#include "loadcast/correlogram.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "loadcast/error.hpp"

namespace loadcast::arima {

namespace {

void check(std::span<const double> x, std::size_t max_lag, const char* who) {
    if (2 * max_lag >= x.size()) {
        throw std::invalid_argument(std::string(who) + ": max_lag must be below n/2");
    }
}

void flag(Correlogram& c, std::size_t n) {
    c.bound = 1.96 / std::sqrt(static_cast<double>(n));
    c.significant.assign(c.values.size(), false);
    for (std::size_t k = 1; k < c.values.size(); ++k) c.significant[k] = std::abs(c.values[k]) > c.bound;
}

}  // namespace

std::size_t Correlogram::highest_significant_lag() const {
    for (std::size_t k = significant.size(); k-- > 1;) {
        if (significant[k]) return k;
    }
    return 0;
}

Correlogram acf(std::span<const double> x, std::size_t max_lag) {
    check(x, max_lag, "acf");
    const std::size_t n = x.size();
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double c0 = 0.0;
    for (double v : x) c0 += (v - mean) * (v - mean);
    if (!(c0 > 0.0)) throw DegenerateInputError("acf: constant series");
    Correlogram out;
    out.values.resize(max_lag + 1);
    out.values[0] = 1.0;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t t = k; t < n; ++t) ck += (x[t] - mean) * (x[t - k] - mean);
        out.values[k] = ck / c0;
    }
    flag(out, n);
    return out;
}

Correlogram pacf(std::span<const double> x, std::size_t max_lag) {
    const Correlogram r = acf(x, max_lag);
    Correlogram out;
    out.values.assign(max_lag + 1, 0.0);
    out.values[0] = 1.0;
    std::vector<double> phi(max_lag + 1, 0.0);
    std::vector<double> prev(max_lag + 1, 0.0);
    double v = 1.0;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double num = r.values[k];
        for (std::size_t j = 1; j < k; ++j) num -= prev[j] * r.values[k - j];
        const double a = num / v;
        phi[k] = a;
        for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - a * prev[k - j];
        v *= 1.0 - a * a;
        out.values[k] = a;
        prev = phi;
    }
    flag(out, x.size());
    return out;
}

OrderBounds suggest_orders(std::span<const double> x, std::size_t max_lag) {
    OrderBounds b;
    b.p_max = std::max(1, static_cast<int>(pacf(x, max_lag).highest_significant_lag()));
    b.q_max = std::max(1, static_cast<int>(acf(x, max_lag).highest_significant_lag()));
    return b;
}

}  // namespace loadcast::arima
