#include "loadcast/shortterm.hpp"

#include <algorithm>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "loadcast/arima_search.hpp"
#include "loadcast/error.hpp"
#include "loadcast/stationarity.hpp"

namespace loadcast::shortterm {

namespace {

const char* kWeekdays[7] = {"Sunday", "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday"};

MonthResidualModel fit_month(unsigned month, const std::vector<double>& resid, const ShorttermConfig& config) {
    MonthResidualModel out;
    out.month = month;
    try {
        out.adf_p = arima::adf_test(resid).p_value;
        out.kpss_p = arima::kpss_test(resid).p_value;
        out.stationary = out.adf_p < 0.05 && out.kpss_p > 0.05;
    } catch (const DegenerateInputError&) {
        out.stationary = true;
        out.adf_p = 0.0;
        out.kpss_p = 1.0;
    }

    const std::size_t n = resid.size();
    const std::size_t holdout = std::min(config.holdout_hours, n / 4);
    const std::size_t train_n = n - holdout;
    // Largest orders the training sample can support: p + q + 10 < n.
    const int room = std::max(2, static_cast<int>(train_n) - 12);

    arima::ArimaSpec spec;
    spec.d = 0;
    spec.constant = false;
    if (config.fixed_orders) {
        spec.p = config.fixed_orders->p_max;
        spec.q = config.fixed_orders->q_max;
        while (spec.p + spec.q > room) (spec.p > spec.q ? spec.p : spec.q)--;
        out.bounds = {spec.p, spec.q};
        try {
            out.model = arima::fit_arima(resid, spec, nullptr, config.fit);
        } catch (const arima::ArimaFitError& e) {
            out.model = e.fallback();
        }
    } else {
        const std::size_t lag = std::min(config.max_lag, (n - 1) / 2);
        arima::OrderBounds b = arima::suggest_orders(resid, lag);
        b.p_max = std::min(b.p_max, config.max_p);
        b.q_max = std::min(b.q_max, config.max_q);
        while (b.p_max + b.q_max + 4 > room && (b.p_max > 1 || b.q_max > 1)) {
            (b.p_max > b.q_max ? b.p_max : b.q_max)--;
        }
        out.bounds = b;
        arima::GridOptions go;
        go.d = 0;
        go.constant = false;
        go.fit = config.fit;
        go.jobs = config.jobs;
        const auto found = arima::grid_search(resid, train_n, b, go);
        // Refit the chosen orders on the whole month so the forecast starts at its end.
        spec.p = found.best.spec.p;
        spec.q = found.best.spec.q;
        try {
            out.model = arima::fit_arima(resid, spec, nullptr, config.fit);
        } catch (const arima::ArimaFitError& e) {
            out.model = e.fallback();
        }
    }

    const std::size_t len = tile_block_length(out.model.spec.p, out.model.spec.q);
    out.block = arima::forecast(out.model, len).point;
    out.block_exceeds_lag_order = static_cast<int>(len) > std::max(out.model.spec.p, out.model.spec.q);
    return out;
}

}  // namespace

std::vector<std::string> hour_dummy_names() {
    std::vector<std::string> names;
    char buf[8];
    for (int h = 0; h < 23; ++h) {
        std::snprintf(buf, sizeof buf, "ToH_%02d", h);
        names.emplace_back(buf);
    }
    return names;
}

std::size_t tile_block_length(int p, int q) {
    const int lag = std::max(p, q);
    return 24 * static_cast<std::size_t>(std::max(1, lag / 24));
}

const regression::LinearModel& ProfileModelSet::cell(unsigned month, unsigned weekday) const {
    if (month < 1 || month > 12 || weekday > 6) throw std::out_of_range("ProfileModelSet::cell: bad key");
    return cells[month - 1][weekday];
}

double ProfileModelSet::profile(Hour h) const {
    const Date d = date_of(h);
    const auto& m = cell(month_of(d), weekday_of(d));
    if (m.coefficients.size() != 24) throw std::logic_error("ProfileModelSet: cell not fitted");
    const unsigned hour = hour_of_day(h);
    return m.coefficients(0) + (hour < 23 ? m.coefficients(static_cast<Eigen::Index>(hour) + 1) : 0.0);
}

ProfileModelSet fit_profiles(const HourlySeries& short_term, const ShorttermConfig& config) {
    if (short_term.empty()) throw DataError("fit_profiles: empty short-term series");
    if (hour_of_day(short_term.start()) != 0 || short_term.size() % 24 != 0) {
        throw RangeError("fit_profiles: series must cover whole days");
    }
    const auto names = hour_dummy_names();
    const std::size_t days = short_term.size() / 24;

    std::array<std::array<std::vector<std::size_t>, 7>, 12> cell_days;
    for (std::size_t d = 0; d < days; ++d) {
        const Date date = date_of(short_term.time_at(d * 24));
        cell_days[month_of(date) - 1][weekday_of(date)].push_back(d);
    }
    for (unsigned m = 0; m < 12; ++m) {
        for (unsigned w = 0; w < 7; ++w) {
            if (cell_days[m][w].size() < 2) {
                throw DataError("coverage: month " + std::to_string(m + 1) + " / " + kWeekdays[w] + " occurs on " +
                                std::to_string(cell_days[m][w].size()) + " day(s); at least 2 are required");
            }
        }
    }

    ProfileModelSet set;
    std::vector<double> residual(short_term.size(), 0.0);
    for (unsigned m = 0; m < 12; ++m) {
        for (unsigned w = 0; w < 7; ++w) {
            const auto& ds = cell_days[m][w];
            const auto rows = static_cast<Eigen::Index>(ds.size() * 24);
            Eigen::MatrixXd x = Eigen::MatrixXd::Zero(rows, 23);
            Eigen::VectorXd y(rows);
            for (std::size_t i = 0; i < ds.size(); ++i) {
                for (int h = 0; h < 24; ++h) {
                    const auto r = static_cast<Eigen::Index>(i * 24 + static_cast<std::size_t>(h));
                    y(r) = short_term[ds[i] * 24 + static_cast<std::size_t>(h)];
                    if (h < 23) x(r, h) = 1.0;
                }
            }
            set.cells[m][w] = regression::ols_fit(regression::DesignMatrix(names, x, y));
            const auto& res = set.cells[m][w].residuals;
            for (std::size_t i = 0; i < ds.size(); ++i) {
                for (std::size_t h = 0; h < 24; ++h) {
                    residual[ds[i] * 24 + h] = res(static_cast<Eigen::Index>(i * 24 + h));
                }
            }
        }
    }

    for (unsigned m = 1; m <= 12; ++m) {
        std::vector<double> pooled;
        for (std::size_t i = 0; i < short_term.size(); ++i) {
            if (month_of(date_of(short_term.time_at(i))) == m) pooled.push_back(residual[i]);
        }
        set.residual_models[m - 1] = fit_month(m, pooled, config);
    }
    return set;
}

HourlySeries predict_profile(const ProfileModelSet& models, Hour from, Hour to) {
    if (to < from) throw RangeError("predict_profile: empty range");
    if (hour_of_day(from) != 0 || hour_of_day(to) != 0) {
        throw RangeError("predict_profile: range must start and end at midnight");
    }
    const auto n = static_cast<std::size_t>((to - from).count());
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Hour h = from + std::chrono::hours{static_cast<long>(i)};
        const Date d = date_of(h);
        const auto& rm = models.residual_models[month_of(d) - 1];
        double r = 0.0;
        if (!rm.block.empty()) {
            const std::size_t hour_in_month = (day_of_month(d) - 1) * 24 + hour_of_day(h);
            r = rm.block[hour_in_month % rm.block.size()];
        }
        out[i] = models.profile(h) + r;
    }
    return {from, std::move(out)};
}

nlohmann::json ProfileModelSet::to_json() const {
    nlohmann::json j;
    auto& cj = j["cells"] = nlohmann::json::array();
    for (unsigned m = 0; m < 12; ++m) {
        for (unsigned w = 0; w < 7; ++w) {
            nlohmann::json e = regression::to_json(cells[m][w]);
            e["month"] = m + 1;
            e["weekday"] = w;
            cj.push_back(std::move(e));
        }
    }
    auto& rj = j["residual_models"] = nlohmann::json::array();
    for (const auto& r : residual_models) {
        rj.push_back({{"month", r.month},
                      {"model", r.model.to_json()},
                      {"bounds", {r.bounds.p_max, r.bounds.q_max}},
                      {"adf_p", r.adf_p},
                      {"kpss_p", r.kpss_p},
                      {"stationary", r.stationary},
                      {"block", r.block},
                      {"block_exceeds_lag_order", r.block_exceeds_lag_order}});
    }
    return j;
}

ProfileModelSet ProfileModelSet::from_json(const nlohmann::json& j) {
    try {
        ProfileModelSet s;
        std::array<std::array<bool, 7>, 12> seen{};
        for (const auto& e : j.at("cells")) {
            const auto m = e.at("month").get<unsigned>();
            const auto w = e.at("weekday").get<unsigned>();
            if (m < 1 || m > 12 || w > 6) throw std::invalid_argument("cell key out of range");
            s.cells[m - 1][w] = regression::linear_model_from_json(e);
            if (s.cells[m - 1][w].coefficients.size() != 24) throw std::invalid_argument("cell needs 24 coefficients");
            seen[m - 1][w] = true;
        }
        for (const auto& row : seen) {
            for (bool b : row) {
                if (!b) throw std::invalid_argument("missing profile cell");
            }
        }
        const auto& rms = j.at("residual_models");
        if (rms.size() != 12) throw std::invalid_argument("need 12 residual models");
        for (const auto& e : rms) {
            MonthResidualModel r;
            r.month = e.at("month").get<unsigned>();
            if (r.month < 1 || r.month > 12) throw std::invalid_argument("residual model month out of range");
            r.model = arima::ArimaModel::from_json(e.at("model"));
            const auto b = e.at("bounds").get<std::vector<int>>();
            if (b.size() != 2) throw std::invalid_argument("bounds");
            r.bounds = {b[0], b[1]};
            r.adf_p = e.at("adf_p").get<double>();
            r.kpss_p = e.at("kpss_p").get<double>();
            r.stationary = e.at("stationary").get<bool>();
            r.block = e.at("block").get<std::vector<double>>();
            r.block_exceeds_lag_order = e.at("block_exceeds_lag_order").get<bool>();
            s.residual_models[r.month - 1] = std::move(r);
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("ProfileModelSet::from_json: ") + e.what());
    }
}

}  // namespace loadcast::shortterm
