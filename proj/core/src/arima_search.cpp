#include "loadcast/arima_search.hpp"

#include <atomic>
#include <optional>
#include <cmath>
#include <nlohmann/json.hpp>
#include <thread>

#include "loadcast/diagnostics.hpp"

namespace loadcast::arima {

namespace {

struct Slot {
    GridCandidate info;
    std::optional<ArimaModel> model;
};

}  // namespace

GridResult grid_search(std::span<const double> y, std::size_t train_end, const OrderBounds& bounds,
                       const GridOptions& options, const Exogenous* xreg) {
    if (bounds.p_max < 1 || bounds.q_max < 1) throw std::invalid_argument("grid_search: bounds must be >= 1");
    if (train_end == 0 || train_end >= y.size()) {
        throw std::invalid_argument("grid_search: test range must be non-empty and follow the training range");
    }
    if (!options.xreg.empty() && (xreg == nullptr || xreg->rows() != y.size())) {
        throw std::invalid_argument("grid_search: exogenous rows must cover the series");
    }
    const std::size_t h = y.size() - train_end;
    std::optional<Exogenous> train_x;
    std::optional<Exogenous> test_x;
    if (!options.xreg.empty()) {
        train_x = xreg->slice(0, train_end).select(options.xreg);
        test_x = xreg->slice(train_end, h).select(options.xreg);
    }
    const auto train = y.first(train_end);
    const auto test = y.subspan(train_end);

    std::vector<Slot> slots;
    for (int p = 1; p <= bounds.p_max + 2; ++p) {
        for (int q = 1; q <= bounds.q_max + 2; ++q) {
            Slot s;
            s.info.p = p;
            s.info.q = q;
            slots.push_back(std::move(s));
        }
    }

    auto run = [&](Slot& s) {
        ArimaSpec spec;
        spec.p = s.info.p;
        spec.d = options.d;
        spec.q = s.info.q;
        spec.xreg = options.xreg;
        spec.constant = options.constant;
        try {
            try {
                s.model = fit_arima(train, spec, train_x ? &*train_x : nullptr, options.fit);
                s.info.converged = true;
            } catch (const ArimaFitError& e) {
                s.model = e.fallback();
                s.info.converged = false;
                s.info.error = e.what();
            }
            const auto fc = forecast(*s.model, h, {}, test_x ? &*test_x : nullptr);
            double ss = 0.0;
            for (std::size_t t = 0; t < h; ++t) ss += (fc.point[t] - test[t]) * (fc.point[t] - test[t]);
            s.info.test_rmse = std::sqrt(ss / static_cast<double>(h));
            s.info.aicc = s.model->aicc;
            s.info.ok = std::isfinite(s.info.test_rmse);
        } catch (const std::exception& e) {
            s.info.ok = false;
            s.info.error = e.what();
            s.model.reset();
        }
    };

    const unsigned workers = std::max(1U, std::min<unsigned>(options.jobs, static_cast<unsigned>(slots.size())));
    if (workers == 1) {
        for (auto& s : slots) run(s);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < slots.size(); i = next++) run(slots[i]);
            });
        }
        for (auto& t : pool) t.join();
    }

    GridResult out;
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const auto& c = slots[i].info;
        out.report.candidates.push_back(c);
        if (!c.ok) continue;
        if (!best) {
            best = i;
            continue;
        }
        const auto& b = slots[*best].info;
        const bool better = c.test_rmse < b.test_rmse ||
                            (c.test_rmse == b.test_rmse &&
                             (c.p + c.q < b.p + b.q || (c.p + c.q == b.p + b.q && c.p < b.p)));
        if (better) best = i;
    }
    if (!best) throw FitError("grid_search: every candidate fit failed");
    out.report.winner = *best;
    out.best = std::move(*slots[*best].model);
    return out;
}

nlohmann::json GridReport::to_json() const {
    nlohmann::json j;
    j["winner"] = winner;
    auto& arr = j["candidates"] = nlohmann::json::array();
    for (const auto& c : candidates) {
        nlohmann::json e{{"p", c.p}, {"q", c.q}, {"ok", c.ok}, {"converged", c.converged}};
        e["test_rmse"] = c.ok ? nlohmann::json(c.test_rmse) : nlohmann::json();
        e["aicc"] = c.ok && std::isfinite(c.aicc) ? nlohmann::json(c.aicc) : nlohmann::json();
        if (!c.error.empty()) e["error"] = c.error;
        arr.push_back(std::move(e));
    }
    return j;
}

ExogenousScreen screen_exogenous(std::span<const double> residuals, const Exogenous& candidates, double alpha) {
    if (candidates.rows() != residuals.size()) {
        throw std::invalid_argument("screen_exogenous: candidate rows do not match residuals");
    }
    ExogenousScreen out;
    std::vector<std::vector<double>> groups;
    std::vector<double> base;
    for (std::size_t t = 0; t < residuals.size(); ++t) {
        if ((candidates.values.row(static_cast<Eigen::Index>(t)).array() == 0.0).all()) base.push_back(residuals[t]);
    }
    for (std::size_t j = 0; j < candidates.names.size(); ++j) {
        std::vector<double> g;
        for (std::size_t t = 0; t < residuals.size(); ++t) {
            if (candidates.values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) != 0.0) {
                g.push_back(residuals[t]);
            }
        }
        if (g.size() < 3) {
            out.skipped.push_back(candidates.names[j]);
            continue;
        }
        const auto ks = regression::ks_uniformity_test(g, residuals);
        out.tested.push_back(candidates.names[j]);
        out.ks_p.push_back(ks.p_value);
        if (ks.p_value < alpha) out.selected.push_back(candidates.names[j]);
        groups.push_back(std::move(g));
    }
    if (base.size() >= 3) groups.push_back(std::move(base));
    if (groups.size() >= 2) out.levene_p = regression::levene_test(groups).p_value;
    return out;
}

}  // namespace loadcast::arima
