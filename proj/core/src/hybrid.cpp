#include "loadcast/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "loadcast/decomposition.hpp"
#include "loadcast/error.hpp"

namespace loadcast::hybrid {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::lm: return "LM";
        case Variant::lm_arima: return "LM+ARIMA";
        case Variant::lm_lstm: return "LM+LSTM";
        case Variant::lm_arima_lstm: return "LM+ARIMA+LSTM";
    }
    return "?";
}

Variant parse_variant(const std::string& s) {
    for (Variant v : all_variants()) {
        if (to_string(v) == s) return v;
    }
    throw std::invalid_argument("unknown hybrid variant: " + s);
}

std::vector<Variant> all_variants() {
    return {Variant::lm, Variant::lm_arima, Variant::lm_lstm, Variant::lm_arima_lstm};
}

std::vector<double> combine(std::span<const double> lm_forecast, const ResidualForecasts& residuals,
                            const HybridPlan& plan) {
    if (!std::isfinite(plan.arima_weight) || !std::isfinite(plan.lstm_weight)) {
        throw std::invalid_argument("combine: weights must be finite");
    }
    const std::size_t n = lm_forecast.size();
    const bool need_arima = plan.variant == Variant::lm_arima || plan.variant == Variant::lm_arima_lstm;
    const bool need_lstm = plan.variant == Variant::lm_lstm || plan.variant == Variant::lm_arima_lstm;
    if (need_arima && residuals.arima.size() != n) {
        throw AlignmentError("combine: ARIMA residual forecast has " + std::to_string(residuals.arima.size()) +
                             " values, LM forecast " + std::to_string(n));
    }
    if (need_lstm && residuals.lstm.size() != n) {
        throw AlignmentError("combine: LSTM residual forecast has " + std::to_string(residuals.lstm.size()) +
                             " values, LM forecast " + std::to_string(n));
    }
    std::vector<double> out(lm_forecast.begin(), lm_forecast.end());
    for (std::size_t i = 0; i < n; ++i) {
        switch (plan.variant) {
            case Variant::lm: break;
            case Variant::lm_arima: out[i] += plan.arima_weight * residuals.arima[i]; break;
            case Variant::lm_lstm: out[i] += plan.lstm_weight * residuals.lstm[i]; break;
            case Variant::lm_arima_lstm:
                out[i] += 0.5 * (plan.arima_weight * residuals.arima[i] + plan.lstm_weight * residuals.lstm[i]);
                break;
        }
    }
    return out;
}

HybridSelection select_hybrid(std::span<const HybridCandidate> candidates, std::span<const double> actual,
                              std::span<const double> scaling, ResidualSum kind) {
    if (candidates.size() < 2) throw std::invalid_argument("select_hybrid: need at least two candidates");
    std::vector<std::vector<double>> resid;
    for (const auto& c : candidates) {
        if (c.forecast.size() != actual.size()) throw AlignmentError("select_hybrid: forecast length mismatch");
        std::vector<double> r(actual.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = actual[i] - c.forecast[i];
        resid.push_back(std::move(r));
    }
    auto total = [kind](const std::vector<double>& r) {
        double s = 0.0;
        for (double v : r) s += kind == ResidualSum::absolute ? std::abs(v) : v * v;
        return s;
    };
    std::size_t base = candidates.size();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].plan.variant == Variant::lm) base = i;
    }
    if (base == candidates.size()) {
        base = 0;
        for (std::size_t i = 1; i < candidates.size(); ++i) {
            if (total(resid[i]) > total(resid[base])) base = i;
        }
    }

    struct Ranked {
        ComparisonRow row;
        HybridPlan plan;
    };
    std::vector<Ranked> ranked;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        Ranked r;
        r.plan = candidates[i].plan;
        r.row.name = to_string(r.plan.variant);
        bool with_mape = std::none_of(actual.begin(), actual.end(), [](double v) { return v == 0.0; });
        r.row.metrics = metrics(actual, candidates[i].forecast, scaling, with_mape);
        r.row.metrics.residual_sum_ratio = residual_sum_ratio(resid[base], resid[i], kind);
        ranked.push_back(std::move(r));
    }
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
        const auto& ma = a.row.metrics;
        const auto& mb = b.row.metrics;
        if (ma.residual_sum_ratio != mb.residual_sum_ratio) return ma.residual_sum_ratio < mb.residual_sum_ratio;
        const double xa = std::isnan(ma.mase) ? 0.0 : ma.mase;
        const double xb = std::isnan(mb.mase) ? 0.0 : mb.mase;
        if (xa != xb) return xa < xb;
        return a.row.name < b.row.name;
    });
    HybridSelection out;
    out.best = ranked.front().plan;
    for (auto& r : ranked) out.table.push_back(std::move(r.row));
    return out;
}

nlohmann::json HybridSelection::to_json() const {
    nlohmann::json j;
    j["best"] = to_string(best.variant);
    auto& rows = j["comparison"] = nlohmann::json::array();
    for (const auto& r : table) {
        nlohmann::json e = r.metrics.to_json();
        e["variant"] = r.name;
        rows.push_back(std::move(e));
    }
    return j;
}

std::string HybridSelection::to_csv() const {
    std::ostringstream os;
    os << "variant,rmse,mae,mase,residual_sum_pct\n" << std::fixed << std::setprecision(3);
    for (const auto& r : table) {
        os << r.name << ',' << r.metrics.rmse << ',' << r.metrics.mae << ',' << r.metrics.mase << ','
           << r.metrics.residual_sum_ratio << '\n';
    }
    return os.str();
}

HourlySeries assemble_full_forecast(const YearlySeries& long_term, const DailySeries& mid_term,
                                    const HourlySeries& short_term) {
    return recompose(long_term, mid_term, short_term);
}

}  // namespace loadcast::hybrid
