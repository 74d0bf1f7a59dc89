#include "loadcast/metrics.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "loadcast/error.hpp"

namespace loadcast::hybrid {

namespace {

nlohmann::json num(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); }

}  // namespace

nlohmann::json MetricReport::to_json() const {
    return {{"rmse", num(rmse)}, {"mape", num(mape)}, {"mae", num(mae)}, {"mase", num(mase)},
            {"residual_sum_ratio", num(residual_sum_ratio)}};
}

double naive_scale(std::span<const double> scaling) {
    if (scaling.size() < 2) throw std::invalid_argument("naive_scale: need at least two in-sample values");
    double acc = 0.0;
    for (std::size_t t = 1; t < scaling.size(); ++t) acc += std::abs(scaling[t] - scaling[t - 1]);
    const double s = acc / static_cast<double>(scaling.size() - 1);
    if (!(s > 0.0)) throw DegenerateInputError("naive_scale: in-sample series is constant");
    return s;
}

MetricReport metrics(std::span<const double> actual, std::span<const double> predicted,
                     std::span<const double> scaling, bool with_mape) {
    if (actual.empty() || actual.size() != predicted.size()) {
        throw std::invalid_argument("metrics: actual and predicted must be non-empty and of equal length");
    }
    const auto n = static_cast<double>(actual.size());
    MetricReport r;
    double se = 0.0;
    double ae = 0.0;
    double ape = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double e = actual[i] - predicted[i];
        se += e * e;
        ae += std::abs(e);
        if (with_mape) {
            if (actual[i] == 0.0) throw DegenerateInputError("metrics: MAPE undefined for a zero actual value");
            ape += std::abs(e / actual[i]);
        }
    }
    r.rmse = std::sqrt(se / n);
    r.mae = ae / n;
    if (with_mape) r.mape = 100.0 * ape / n;
    if (!scaling.empty()) r.mase = r.mae / naive_scale(scaling);
    return r;
}

double residual_sum_ratio(std::span<const double> baseline_residuals, std::span<const double> hybrid_residuals,
                          ResidualSum kind) {
    if (baseline_residuals.size() != hybrid_residuals.size()) {
        throw std::invalid_argument("residual_sum_ratio: inputs differ in length");
    }
    auto total = [kind](std::span<const double> r) {
        double s = 0.0;
        for (double v : r) s += kind == ResidualSum::absolute ? std::abs(v) : v * v;
        return s;
    };
    const double base = total(baseline_residuals);
    if (!(base > 0.0)) throw DegenerateInputError("residual_sum_ratio: baseline residual sum is zero");
    return 100.0 * total(hybrid_residuals) / base;
}

}  // namespace loadcast::hybrid
