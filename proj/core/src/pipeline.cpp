#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "loadcast/atomic_file.hpp"
#include "loadcast/decomposition.hpp"
#include "loadcast/error.hpp"
#include "loadcast/features.hpp"
#include "loadcast/pipeline.hpp"
#include "loadcast/selection.hpp"
#include "loadcast/stationarity.hpp"

namespace loadcast::pipeline {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

std::size_t day_count(Date from, Date to) { return static_cast<std::size_t>((to - from).count()); }

// Inputs shared by fit and forecast. The hourly load is only read by fit.
struct Inputs {
    ingest::TemperatureSeries temperature;
    ingest::MacroTable macro;
    ingest::HolidaySet holidays;
};

DailySeries merge_daily(const DailySeries& base, const DailySeries& extra, const std::string& what) {
    std::map<Date, double> all;
    for (std::size_t i = 0; i < base.size(); ++i) all[base.date_at(i)] = base[i];
    for (std::size_t i = 0; i < extra.size(); ++i) all[extra.date_at(i)] = extra[i];
    std::vector<double> values;
    Date expect = all.begin()->first;
    for (const auto& [d, v] : all) {
        if (d != expect) throw DataError(what + ": gap before " + format_iso_date(d));
        values.push_back(v);
        expect = d + std::chrono::days{1};
    }
    return DailySeries(all.begin()->first, std::move(values));
}

YearlySeries merge_yearly(const YearlySeries& base, const YearlySeries& extra, const std::string& what) {
    std::map<int, double> all;
    for (std::size_t i = 0; i < base.size(); ++i) all[base.first_year() + static_cast<int>(i)] = base.values()[i];
    for (std::size_t i = 0; i < extra.size(); ++i) all[extra.first_year() + static_cast<int>(i)] = extra.values()[i];
    if (all.empty()) return {};
    std::vector<double> values;
    int expect = all.begin()->first;
    for (const auto& [y, v] : all) {
        if (y != expect) throw DataError(what + ": no value for " + std::to_string(expect));
        values.push_back(v);
        ++expect;
    }
    return YearlySeries(all.begin()->first, std::move(values));
}

Inputs load_exogenous(const PipelineConfig& cfg) {
    Inputs ex;
    ex.temperature = ingest::load_temperature_csv(cfg.data.temperature);
    if (!cfg.data.future_temperature.empty()) {
        auto future = ingest::load_temperature_csv(cfg.data.future_temperature);
        ex.temperature = ingest::TemperatureSeries(
            merge_daily(ex.temperature.daily(), future.daily(), cfg.data.future_temperature.string()));
    }
    ex.macro = ingest::load_macro_csv(cfg.data.macro);
    if (!cfg.data.future_macro.empty()) {
        auto future = ingest::load_macro_csv(cfg.data.future_macro);
        std::map<std::string, YearlySeries> merged = ex.macro.indicators();
        for (const auto& [id, s] : future.indicators()) {
            merged[id] = merged.count(id) ? merge_yearly(merged[id], s, cfg.data.future_macro.string() + " " + id) : s;
        }
        ex.macro = ingest::MacroTable(std::move(merged));
    }
    ex.holidays = ingest::load_holidays_csv(cfg.data.holidays.empty() ? ingest::bundled_holidays_path()
                                                                      : cfg.data.holidays);
    return ex;
}

// Same calendar day in the latest covered year (Feb 29 falls back to Feb 28).
DailySeries with_climatology(const DailySeries& t, Date from, Date to) {
    const Date begin = std::min(from, t.start());
    const Date end = std::max(to, t.end());
    if (from < t.start()) throw RangeError("temperature starts " + format_iso_date(t.start()) + ", after " + format_iso_date(from));
    std::vector<double> values;
    for (Date d = begin; d < end; d += std::chrono::days{1}) {
        if (t.covers(d, d + std::chrono::days{1})) {
            values.push_back(t.at(d));
            continue;
        }
        const unsigned month = month_of(d);
        unsigned day = day_of_month(d);
        bool found = false;
        for (int y = year_of(t.end() - std::chrono::days{1}); y >= year_of(t.start()) && !found; --y) {
            std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{month}, std::chrono::day{day}};
            if (!ymd.ok()) ymd = std::chrono::year{y} / std::chrono::month{month} / std::chrono::day{day - 1};
            const Date candidate{ymd};
            if (t.covers(candidate, candidate + std::chrono::days{1})) {
                values.push_back(t.at(candidate));
                found = true;
            }
        }
        if (!found) throw RangeError("no historical temperature for " + format_iso_date(d));
    }
    return DailySeries(begin, std::move(values));
}

const ingest::TemperatureSeries& temperature_for(const PipelineConfig& cfg, const ingest::TemperatureSeries& temp,
                                                 Date from, Date to, ingest::TemperatureSeries& scratch) {
    const Date lead = from - std::chrono::days{2};
    if (temp.covers(lead, to)) return temp;
    if (!cfg.repeat_climatology) {
        throw RangeError("temperature covers " + format_iso_date(temp.daily().start()) + " to " +
                         format_iso_date(temp.daily().end()) + " but " + format_iso_date(lead) + " to " +
                         format_iso_date(to) + " is needed; supply future temperature (data.future_temperature) "
                         "or pass --repeat-climatology");
    }
    scratch = ingest::TemperatureSeries(with_climatology(temp.daily(), lead, to));
    return scratch;
}

bool is_calendar_dummy(const std::string& name) {
    return name == "H" || name.rfind("ToD_", 0) == 0 || name.rfind("ToM_", 0) == 0;
}

double calendar_dummy(const std::string& name, Date d, const ingest::HolidaySet& holidays) {
    if (name == "H") return holidays.contains(d) ? 1.0 : 0.0;
    if (name.rfind("ToM_", 0) == 0) return features::month_dummy_name(month_of(d)) == name ? 1.0 : 0.0;
    const auto& wd = features::weekday_dummy_names();
    for (std::size_t i = 0; i < wd.size(); ++i) {
        if (wd[i] == name) return weekday_of(d) == i + 1 ? 1.0 : 0.0;
    }
    throw std::invalid_argument("not a calendar dummy: " + name);
}

arima::Exogenous calendar_xreg(const std::vector<std::string>& names, Date from, Date to,
                               const ingest::HolidaySet& holidays) {
    arima::Exogenous x;
    x.names = names;
    x.values.resize(static_cast<Eigen::Index>(day_count(from, to)), static_cast<Eigen::Index>(names.size()));
    Eigen::Index r = 0;
    for (Date d = from; d < to; d += std::chrono::days{1}, ++r) {
        for (std::size_t c = 0; c < names.size(); ++c) x.values(r, static_cast<Eigen::Index>(c)) = calendar_dummy(names[c], d, holidays);
    }
    return x;
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

bool needs_lstm(hybrid::Variant v) { return v == hybrid::Variant::lm_lstm || v == hybrid::Variant::lm_arima_lstm; }

std::vector<hybrid::HybridCandidate> variant_candidates(const std::vector<hybrid::Variant>& variants,
                                                        const std::vector<double>& lm,
                                                        const hybrid::ResidualForecasts& r, const hybrid::HybridPlan& weights) {
    std::vector<hybrid::HybridCandidate> out;
    for (auto v : variants) {
        if (needs_lstm(v) && r.lstm.empty()) continue;
        hybrid::HybridPlan plan = weights;
        plan.variant = v;
        out.push_back({plan, hybrid::combine(lm, r, plan)});
    }
    return out;
}

// naive_scale({0, s}) == s; lets a stored scale stand in for the training series.
std::vector<double> scale_stub(double s) { return {0.0, s}; }

}  // namespace

FitOutcome run_fit(const PipelineConfig& cfg, bool write) {
    const Date train_begin = cfg.train.begin();
    const Date train_end = cfg.train.end();
    const Date test_begin = cfg.test.begin();
    const Date test_end = cfg.test.end();

    HourlySeries load;
    Inputs ex;
    std::optional<YearlySeries> yearly_history;
    stage("ingest", [&] {
        load = ingest::load_hourly_csv(cfg.data.load);
        ex = load_exogenous(cfg);
        if (!cfg.data.yearly_load.empty()) yearly_history = ingest::load_yearly_csv(cfg.data.yearly_load);
        if (!load.covers(Hour{train_begin}, Hour{test_end})) {
            throw RangeError(cfg.data.load.string() + " covers " + format_iso_hour(load.start()) + " to " +
                             format_iso_hour(load.end()) + " but the train and test years need " +
                             format_iso_hour(Hour{train_begin}) + " to " + format_iso_hour(Hour{test_end}));
        }
        return 0;
    });

    const Decomposition dec = stage("decompose", [&] { return decompose(load.slice(Hour{train_begin}, Hour{test_end})); });

    Bundle b;
    b.train = cfg.train;
    b.test = cfg.test;
    b.t_ref = cfg.midterm.t_ref;
    json report;

    // Long-term LM on yearly macro indicators.
    stage("longterm", [&] {
        const YearlySeries yearly =
            yearly_history ? merge_yearly(*yearly_history, dec.long_term, "yearly load") : dec.long_term;
        const int first = cfg.longterm.first_year.value_or(std::max(yearly.first_year(), ex.macro.first_year()));
        b.long_indicators = cfg.longterm.indicators.empty() ? ex.macro.ids() : cfg.longterm.indicators;
        const auto train_x = features::build_longterm_design(ex.macro, b.long_indicators, {first, cfg.train.last}, yearly);

        regression::SubsetSearchConfig sc;
        sc.keep_n = cfg.longterm.keep_n;
        sc.cv_folds = cfg.longterm.cv_folds;
        sc.cull_factor = cfg.longterm.cull_factor;
        sc.forced = cfg.longterm.forced;
        sc.check_diagnostics = cfg.longterm.check_diagnostics;
        sc.normality_alpha = cfg.longterm.normality_alpha;
        sc.max_vif = cfg.longterm.max_vif;
        sc.jobs = cfg.jobs;
        if (cfg.longterm.holdout == "test") {
            sc.test = features::build_longterm_design(ex.macro, b.long_indicators, {cfg.test.first, cfg.test.last}, yearly);
        }
        regression::SelectionReport sel;
        try {
            sel = regression::subset_search(train_x, sc);
        } catch (const regression::SelectionError& e) {
            report["longterm"] = e.report().to_json();
            throw;
        }
        report["longterm"] = sel.to_json();
        report["longterm"]["years"] = {first, cfg.train.last};
        const auto regs = sel.winning().regressors;
        b.long_model = regression::ols_fit(train_x.select(regs));
        return 0;
    });

    // Mid-term LM on weather and calendar regressors.
    const DailySeries mid_train = dec.mid_term.slice(train_begin, train_end);
    const DailySeries mid_test = dec.mid_term.slice(test_begin, test_end);
    std::vector<std::string> mid_regs;
    std::vector<double> r_train, r_test, lm_test;
    stage("midterm-lm", [&] {
        const auto x = features::build_midterm_candidates(ex.temperature, ex.holidays, train_begin, train_end, mid_train,
                                                          cfg.midterm.t_ref);
        json mj;
        mj["mode"] = cfg.midterm.mode;
        if (cfg.midterm.mode == "fixed") {
            mid_regs = features::midterm_model_columns(cfg.midterm.months);
        } else {
            const auto& weekdays = features::weekday_dummy_names();
            std::vector<std::string> pool = cfg.midterm.candidates;
            if (pool.empty()) {
                for (const auto& n : x.regressor_names()) {
                    if (std::find(weekdays.begin(), weekdays.end(), n) == weekdays.end()) pool.push_back(n);
                }
            }
            const auto ranking = regression::rank_subsets_by_aicc(x, pool, {}, 1, cfg.jobs);
            if (ranking.best.empty()) throw FitError("no non-singular subset of the daily candidates");
            std::vector<std::string> step_pool;
            for (const auto& w : weekdays) {
                if (std::find(pool.begin(), pool.end(), w) == pool.end()) step_pool.push_back(w);
            }
            const auto step = regression::stepwise_extend(x, ranking.best.front().regressors, step_pool);
            mid_regs = step.regressors;
            mj["pool"] = pool;
            mj["subsets_enumerated"] = ranking.enumerated;
            mj["subsets_pruned"] = ranking.pruned;
            mj["subsets_singular"] = ranking.singular;
            mj["subset_best"] = ranking.best.front().regressors;
            mj["subset_aicc"] = ranking.best.front().aicc;
            mj["stepwise_added"] = step.added;
        }
        b.mid_model = regression::ols_fit(x.select(mid_regs));
        mj["regressors"] = mid_regs;
        mj["aicc"] = b.mid_model.aicc;
        report["midterm"] = mj;

        r_train = to_vector(b.mid_model.residuals);
        const auto tx = features::build_midterm_candidates(ex.temperature, ex.holidays, test_begin, test_end,
                                                           std::nullopt, cfg.midterm.t_ref);
        lm_test = to_vector(b.mid_model.predict(tx));
        r_test.resize(lm_test.size());
        for (std::size_t i = 0; i < r_test.size(); ++i) r_test[i] = mid_test[i] - lm_test[i];
        return 0;
    });

    // ARIMA on the LM residuals.
    std::vector<double> arima_test;
    stage("midterm-arima", [&] {
        json aj;
        const int d = cfg.arima.d ? *cfg.arima.d : arima::select_d(r_train);
        aj["d"] = d;
        aj["d_source"] = cfg.arima.d ? "config" : "kpss";

        std::vector<std::string> xnames;
        std::optional<arima::Exogenous> xreg_all;
        if (cfg.arima.screen_exogenous) {
            std::vector<std::string> dummies;
            for (const auto& r : mid_regs) {
                if (is_calendar_dummy(r)) dummies.push_back(r);
            }
            if (!dummies.empty()) {
                const auto cand = calendar_xreg(dummies, train_begin, train_end, ex.holidays);
                const auto screen = arima::screen_exogenous(r_train, cand, cfg.arima.alpha);
                aj["screen"] = {{"tested", screen.tested},
                                {"ks_p", screen.ks_p},
                                {"skipped", screen.skipped},
                                {"levene_p", screen.levene_p},
                                {"selected", screen.selected}};
                xnames = screen.selected;
            }
        }
        if (!xnames.empty()) xreg_all = calendar_xreg(xnames, train_begin, test_end, ex.holidays);
        const std::size_t n_train = r_train.size();
        const std::size_t n_test = r_test.size();

        arima::FitOptions fit;
        fit.css_only = cfg.arima.css_only;
        fit.max_iterations = cfg.arima.max_iterations;
        const bool constant = d == 0;
        if (cfg.arima.fixed_orders) {
            arima::ArimaSpec spec{cfg.arima.fixed_orders->p_max, d, cfg.arima.fixed_orders->q_max, xnames, constant};
            std::optional<arima::Exogenous> xr;
            if (xreg_all) xr = xreg_all->slice(0, n_train);
            try {
                b.arima = arima::fit_arima(r_train, spec, xr ? &*xr : nullptr, fit);
            } catch (const arima::ArimaFitError& e) {
                b.arima = e.fallback();
            }
            aj["orders_source"] = "config";
        } else {
            const auto diffs = arima::difference(r_train, d);
            const std::size_t lag = std::min(cfg.arima.max_lag, (diffs.size() - 1) / 2);
            auto bounds = arima::suggest_orders(diffs, lag);
            aj["suggested"] = {bounds.p_max, bounds.q_max};
            if (cfg.arima.max_p) bounds.p_max = std::min(bounds.p_max, *cfg.arima.max_p);
            if (cfg.arima.max_q) bounds.q_max = std::min(bounds.q_max, *cfg.arima.max_q);
            aj["bounds"] = {bounds.p_max, bounds.q_max};
            std::vector<double> y = r_train;
            y.insert(y.end(), r_test.begin(), r_test.end());
            arima::GridOptions go;
            go.d = d;
            go.constant = constant;
            go.fit = fit;
            go.jobs = cfg.jobs;
            auto grid = arima::grid_search(y, n_train, bounds, go, xreg_all ? &*xreg_all : nullptr);
            b.arima = std::move(grid.best);
            aj["grid"] = grid.report.to_json();
            aj["orders_source"] = "grid";
        }
        aj["model"] = b.arima.spec.label();
        aj["method"] = b.arima.method;
        aj["converged"] = b.arima.converged;
        aj["aicc"] = b.arima.aicc;
        std::optional<arima::Exogenous> xt;
        if (xreg_all) xt = xreg_all->slice(n_train, n_test);
        arima_test = arima::forecast(b.arima, n_test, {}, xt ? &*xt : nullptr).point;
        report["arima"] = aj;
        return 0;
    });

    // Seq2Seq on the scaled LM residuals.
    std::vector<double> lstm_test;
    if (cfg.seq2seq.enabled) {
        stage("midterm-lstm", [&] {
            const auto& arch = cfg.seq2seq.architecture;
            auto model = seq2seq::Seq2SeqModel::initialize(arch, cfg.seed);
            model.scaler = seq2seq::MinMaxScaler::fit(r_train);
            const auto scaled = model.scaler.scale(r_train);
            const auto windows = seq2seq::make_windows(scaled, arch.input_length, arch.output_length, cfg.seq2seq.stride);
            if (windows.empty()) {
                throw std::invalid_argument("training residuals (" + std::to_string(r_train.size()) +
                                            " days) shorter than input_length + output_length");
            }
            auto tc = cfg.seq2seq.train;
            tc.seed = cfg.seed;
            const auto result = seq2seq::train(model, windows, tc);
            lstm_test = seq2seq::predict(model, r_train, r_test.size());
            b.lstm_history.assign(r_train.end() - static_cast<std::ptrdiff_t>(arch.input_length), r_train.end());
            b.lstm = std::move(model);
            report["lstm"] = {{"windows", windows.size()},
                              {"updates", result.updates},
                              {"parameters", b.lstm->parameter_count()},
                              {"loss_history", result.loss_history}};
            return 0;
        });
    }

    stage("shortterm", [&] {
        auto sc = cfg.shortterm;
        sc.jobs = cfg.jobs;
        b.short_model = shortterm::fit_profiles(dec.short_term.slice(Hour{train_begin}, Hour{train_end}), sc);
        json months = json::array();
        for (const auto& r : b.short_model.residual_models) {
            months.push_back({{"month", r.month},
                              {"model", r.model.spec.label()},
                              {"adf_p", r.adf_p},
                              {"kpss_p", r.kpss_p},
                              {"stationary", r.stationary},
                              {"block_hours", r.block.size()}});
        }
        report["shortterm"] = months;
        return 0;
    });

    stage("hybrid", [&] {
        b.mid_scale = hybrid::naive_scale(mid_train.values());
        b.hourly_scale = hybrid::naive_scale(load.slice(Hour{train_begin}, Hour{train_end}).values());
        const auto cands = variant_candidates(cfg.hybrid.variants, lm_test, {arima_test, lstm_test}, hybrid::HybridPlan{});
        if (cands.size() >= 2) {
            const auto stub = scale_stub(b.mid_scale);
            const auto sel = hybrid::select_hybrid(cands, mid_test.values(), stub, cfg.hybrid.residual_sum);
            report["hybrid"] = sel.to_json();
            b.plan = sel.best;
        } else {
            b.plan = cands.front().plan;
        }
        if (cfg.hybrid.variant) b.plan.variant = *cfg.hybrid.variant;
        report["plan"] = hybrid::to_string(b.plan.variant);
        return 0;
    });

    if (write) {
        stage("write", [&] {
            const fs::path staging = cfg.output_dir / "models.partial";
            const fs::path models = cfg.output_dir / "models";
            fs::remove_all(staging);
            save_bundle(b, staging);
            fs::remove_all(models);
            fs::rename(staging, models);
            write_file_atomic(cfg.output_dir / "reports" / "selection.json", report.dump(2));
            return 0;
        });
    }
    return {std::move(b), std::move(report)};
}

ForecastResult run_forecast(const PipelineConfig& cfg, const Bundle& b, Date from, Date to) {
    if (from >= to) throw RangeError("forecast range is empty");
    if (from < b.origin()) {
        throw RangeError("forecast must start on or after " + format_iso_date(b.origin()) + ", the day after training");
    }
    const Inputs ex = stage("ingest", [&] { return load_exogenous(cfg); });
    ForecastResult out;

    stage("longterm", [&] {
        const int y0 = year_of(from);
        const int y1 = year_of(to - std::chrono::days{1});
        for (const auto& id : b.long_indicators) {
            if (!ex.macro.contains(id)) throw DataError("macro indicator '" + id + "' missing from the macro inputs");
            const auto& s = ex.macro.at(id);
            if (!s.covers(y0) || !s.covers(y1)) {
                throw RangeError("macro indicator '" + id + "' ends in " + std::to_string(s.last_year()) +
                                 "; forecasting " + std::to_string(y1) +
                                 " needs future macro inputs (data.future_macro)");
            }
        }
        const auto x = features::build_longterm_design(ex.macro, b.long_indicators, {y0, y1});
        out.long_term = YearlySeries(y0, to_vector(b.long_model.predict(x)));
        return 0;
    });

    const std::size_t offset = day_count(b.origin(), from);
    const std::size_t days = day_count(from, to);
    const std::size_t horizon = offset + days;
    arima::IntervalForecast af;
    stage("midterm", [&] {
        ingest::TemperatureSeries scratch;
        const auto& temp = temperature_for(cfg, ex.temperature, from, to, scratch);
        const auto x = features::build_midterm_candidates(temp, ex.holidays, from, to, std::nullopt, b.t_ref);
        const auto lm = to_vector(b.mid_model.predict(x));

        std::optional<arima::Exogenous> xr;
        if (!b.arima.spec.xreg.empty()) xr = calendar_xreg(b.arima.spec.xreg, b.origin(), to, ex.holidays);
        const std::vector<double> levels{0.8, 0.95};
        af = arima::forecast(b.arima, horizon, levels, xr ? &*xr : nullptr);
        hybrid::ResidualForecasts r;
        r.arima.assign(af.point.begin() + static_cast<std::ptrdiff_t>(offset), af.point.end());
        if (b.lstm) {
            const auto l = seq2seq::predict(*b.lstm, b.lstm_history, horizon);
            r.lstm.assign(l.begin() + static_cast<std::ptrdiff_t>(offset), l.end());
        }
        out.mid_variants = variant_candidates(hybrid::all_variants(), lm, r, b.plan);
        out.mid_term = DailySeries(from, hybrid::combine(lm, r, b.plan));
        return 0;
    });

    stage("shortterm", [&] {
        out.short_term = shortterm::predict_profile(b.short_model, Hour{from}, Hour{to});
        return 0;
    });

    stage("assemble", [&] {
        out.point = hybrid::assemble_full_forecast(out.long_term, out.mid_term, out.short_term);
        const std::size_t n = out.point.size();
        out.lo80.resize(n);
        out.hi80.resize(n);
        out.lo95.resize(n);
        out.hi95.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t k = offset + day_count(from, date_of(out.point.time_at(i)));
            const double w80 = af.upper[0][k] - af.point[k];
            const double w95 = af.upper[1][k] - af.point[k];
            out.lo80[i] = out.point[i] - w80;
            out.hi80[i] = out.point[i] + w80;
            out.lo95[i] = out.point[i] - w95;
            out.hi95[i] = out.point[i] + w95;
        }
        return 0;
    });
    return out;
}

std::string forecast_csv(const ForecastResult& r) {
    std::string s = "timestamp,forecast_mw,lo80,hi80,lo95,hi95\n";
    char buf[256];
    for (std::size_t i = 0; i < r.point.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s,%.3f,%.3f,%.3f,%.3f,%.3f\n", format_iso_hour(r.point.time_at(i)).c_str(),
                      r.point[i], r.lo80[i], r.hi80[i], r.lo95[i], r.hi95[i]);
        s += buf;
    }
    return s;
}

ForecastTable read_forecast_csv(const fs::path& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
    const auto header = csv::split_row(line);
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[csv::trim(header[i])] = i;
    if (!col.count("timestamp") || !col.count("forecast_mw")) {
        throw DataError(path.string() + ": header needs timestamp and forecast_mw", 1);
    }
    const char* bounds[] = {"lo80", "hi80", "lo95", "hi95"};
    const auto present = std::count_if(std::begin(bounds), std::end(bounds), [&](const char* b) { return col.count(b) != 0; });
    if (present != 0 && present != 4) throw DataError(path.string() + ": bound columns must come as a group", 1);

    ForecastTable t;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (csv::trim(line).empty()) continue;
        const auto f = csv::split_row(line);
        if (f.size() != header.size()) {
            throw DataError(path.string() + ": line " + std::to_string(lineno) + ": expected " +
                            std::to_string(header.size()) + " fields", lineno);
        }
        try {
            t.times.push_back(parse_iso_hour(csv::trim(f[col["timestamp"]])));
        } catch (const std::invalid_argument& e) {
            throw DataError(path.string() + ": line " + std::to_string(lineno) + ": " + e.what(), lineno);
        }
        t.forecast.push_back(csv::parse_double(f[col["forecast_mw"]], lineno, "forecast_mw"));
        if (present == 4) {
            t.lo80.push_back(csv::parse_double(f[col["lo80"]], lineno, "lo80"));
            t.hi80.push_back(csv::parse_double(f[col["hi80"]], lineno, "hi80"));
            t.lo95.push_back(csv::parse_double(f[col["lo95"]], lineno, "lo95"));
            t.hi95.push_back(csv::parse_double(f[col["hi95"]], lineno, "hi95"));
        }
    }
    return t;
}

json Evaluation::to_json() const {
    json j;
    j["rows"] = json::array();
    for (const auto& r : rows) {
        json m = r.metrics.to_json();
        m["name"] = r.name;
        j["rows"].push_back(m);
    }
    if (variants) j["variants"] = variants->to_json();
    return j;
}

std::string Evaluation::rows_csv() const {
    std::string s = "name,rmse,mape,mae,mase\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%.4f,%.4f,%.4f,%.4f\n", r.name.c_str(), r.metrics.rmse, r.metrics.mape,
                      r.metrics.mae, r.metrics.mase);
        s += buf;
    }
    return s;
}

Evaluation run_evaluate(const PipelineConfig& cfg, const Bundle& b, const HourlySeries& actuals, Date from, Date to) {
    if (!actuals.covers(Hour{from}, Hour{to})) {
        throw RangeError("actuals cover " + format_iso_hour(actuals.start()) + " to " + format_iso_hour(actuals.end()) +
                         " but the evaluation range is " + format_iso_hour(Hour{from}) + " to " +
                         format_iso_hour(Hour{to}));
    }
    const ForecastResult fc = run_forecast(cfg, b, from, to);
    const HourlySeries act = actuals.slice(Hour{from}, Hour{to});
    const auto a = act.values();
    const auto p = fc.point.values();

    Evaluation ev;
    auto row = [&](const std::string& name, std::size_t begin, std::size_t end) {
        hybrid::ComparisonRow r;
        r.name = name;
        r.metrics = hybrid::metrics(a.subspan(begin, end - begin), p.subspan(begin, end - begin));
        r.metrics.mase = r.metrics.mae / b.hourly_scale;
        ev.rows.push_back(r);
    };
    const int y0 = year_of(from);
    const int y1 = year_of(to - std::chrono::days{1});
    for (int y = y0; y <= y1; ++y) {
        const Hour lo = std::max(Hour{first_day_of_year(y)}, Hour{from});
        const Hour hi = std::min(Hour{first_day_of_year(y + 1)}, Hour{to});
        row("forecast " + std::to_string(y), static_cast<std::size_t>((lo - Hour{from}).count()),
            static_cast<std::size_t>((hi - Hour{from}).count()));
    }
    if (y1 > y0) row("forecast " + std::to_string(y0) + "-" + std::to_string(y1), 0, a.size());

    if (from == first_day_of_year(y0) && to == first_day_of_year(y1 + 1) && fc.mid_variants.size() >= 2) {
        const Decomposition dec = decompose(act);
        const auto stub = scale_stub(b.mid_scale);
        ev.variants = hybrid::select_hybrid(fc.mid_variants, dec.mid_term.values(), stub, cfg.hybrid.residual_sum);
    }
    return ev;
}

}  // namespace loadcast::pipeline
