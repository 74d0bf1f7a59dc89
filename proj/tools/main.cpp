// loadcast command-line front end.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "loadcast/atomic_file.hpp"
#include "loadcast/calendar.hpp"
#include "loadcast/error.hpp"
#include "loadcast/ingest.hpp"
#include "loadcast/pipeline.hpp"
#include "loadcast/svg_plot.hpp"

namespace fs = std::filesystem;
using namespace loadcast;

namespace {

struct Common {
    std::string config;
    std::string out;
    unsigned jobs = 0;
    std::optional<std::uint64_t> seed;
    bool css_only = false;
    bool repeat_climatology = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "pipeline config (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", c.out, "output directory (overrides output_dir)");
    cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed, "random seed");
    cmd->add_flag("--css-only", c.css_only, "conditional-sum-of-squares ARIMA fits only");
    cmd->add_flag("--repeat-climatology", c.repeat_climatology,
                  "reuse historical temperature where future temperature is missing");
}

pipeline::PipelineConfig configure(const Common& c) {
    auto cfg = pipeline::load_config(c.config);
    if (!c.out.empty()) cfg.output_dir = c.out;
    if (c.jobs) cfg.jobs = c.jobs;
    if (c.seed) cfg.seed = *c.seed;
    if (c.css_only) {
        cfg.arima.css_only = true;
        cfg.shortterm.fit.css_only = true;
    }
    if (c.repeat_climatology) cfg.repeat_climatology = true;
    return cfg;
}

struct Range {
    Date from;
    Date to;  // exclusive
};

// --from/--to are inclusive dates; default is the test years.
Range resolve_range(const pipeline::Bundle& b, const std::string& from, const std::string& to) {
    Range r{b.test.begin(), b.test.end()};
    if (!from.empty()) r.from = parse_iso_date(from);
    if (!to.empty()) r.to = parse_iso_date(to) + std::chrono::days{1};
    if (r.from >= r.to) throw RangeError("empty date range");
    return r;
}

std::string fmt(double v, const char* spec = "%.3f") {
    if (std::isnan(v)) return "-";
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

void print_rows(const std::vector<hybrid::ComparisonRow>& rows, bool ratio) {
    std::printf("%-26s %12s %9s %12s %8s%s\n", "", "RMSE", "MAPE%", "MAE", "MASE", ratio ? "  ResidSum%" : "");
    for (const auto& r : rows) {
        std::printf("%-26s %12s %9s %12s %8s", r.name.c_str(), fmt(r.metrics.rmse).c_str(),
                    fmt(r.metrics.mape, "%.2f").c_str(), fmt(r.metrics.mae).c_str(),
                    fmt(r.metrics.mase, "%.3f").c_str());
        if (ratio) std::printf("  %9s", fmt(r.metrics.residual_sum_ratio, "%.1f").c_str());
        std::printf("\n");
    }
}

int cmd_fit(const Common& c) {
    const auto cfg = configure(c);
    const auto outcome = pipeline::run_fit(cfg);
    std::cout << "long-term regressors:";
    for (const auto& n : outcome.bundle.long_model.columns) std::cout << ' ' << n;
    std::cout << "\nmid-term ARIMA: " << outcome.bundle.arima.spec.label() << '\n';
    std::cout << "hybrid plan: " << hybrid::to_string(outcome.bundle.plan.variant) << '\n';
    std::cout << "bundle written to " << (cfg.output_dir / "models").string() << '\n';
    return 0;
}

int cmd_forecast(const Common& c, const std::string& from, const std::string& to, std::string output) {
    const auto cfg = configure(c);
    const auto bundle = pipeline::load_bundle(cfg.output_dir / "models");
    const auto range = resolve_range(bundle, from, to);
    const auto result = pipeline::run_forecast(cfg, bundle, range.from, range.to);
    if (output.empty()) output = (cfg.output_dir / "forecast.csv").string();
    write_file_atomic(output, pipeline::forecast_csv(result));
    std::cout << result.point.size() << " hourly rows written to " << output << '\n';
    return 0;
}

int cmd_evaluate(const Common& c, const std::string& from, const std::string& to, const std::string& actuals_path) {
    const auto cfg = configure(c);
    const auto bundle = pipeline::load_bundle(cfg.output_dir / "models");
    const auto range = resolve_range(bundle, from, to);
    const auto actuals = ingest::load_hourly_csv(actuals_path.empty() ? cfg.data.load : fs::path(actuals_path));
    const auto ev = pipeline::run_evaluate(cfg, bundle, actuals, range.from, range.to);
    const fs::path reports = cfg.output_dir / "reports";
    write_file_atomic(reports / "evaluation.json", ev.to_json().dump(2));
    write_file_atomic(reports / "forecast_accuracy.csv", ev.rows_csv());
    print_rows(ev.rows, false);
    if (ev.variants) {
        write_file_atomic(reports / "midterm_variants.csv", ev.variants->to_csv());
        std::cout << "\nmid-term variants\n";
        print_rows(ev.variants->table, true);
    }
    return 0;
}

int cmd_plot(const std::string& forecast_path, const std::string& actuals_path, const std::string& output,
             const std::string& title) {
    const auto table = pipeline::read_forecast_csv(forecast_path);
    plot::PlotInput in;
    in.title = title.empty() ? fs::path(forecast_path).filename().string() : title;
    in.times = table.times;
    in.forecast = table.forecast;
    in.lower = table.lo95;
    in.upper = table.hi95;
    if (!actuals_path.empty() && !table.times.empty()) {
        const auto actual = ingest::load_hourly_csv(actuals_path);
        const auto slice = actual.slice(table.times.front(), table.times.back() + std::chrono::hours{1});
        in.actual.assign(slice.values().begin(), slice.values().end());
    }
    write_file_atomic(output, plot::render_svg(in));
    std::cout << "plot written to " << output << '\n';
    return 0;
}

int cmd_report(const Common& c, bool raw) {
    const auto cfg = configure(c);
    const fs::path path = cfg.output_dir / "reports" / "selection.json";
    const auto j = nlohmann::json::parse(read_file(path));
    if (raw) {
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    if (j.contains("longterm")) {
        const auto& l = j["longterm"];
        std::cout << "long-term subsets enumerated: " << l.value("subsets_enumerated", 0) << '\n';
        const auto& cands = l["candidates"];
        if (l.contains("final_ranking")) {
            const auto winner = l.contains("winner") && l["winner"].is_number() ? l["winner"].get<std::size_t>() : cands.size();
            std::cout << "rank  AICc        CV-RMSE     test max|e|  diag  regressors\n";
            int rank = 1;
            for (const auto& idx : l["final_ranking"]) {
                const auto& cand = cands.at(idx.get<std::size_t>());
                std::string regs;
                for (const auto& r : cand["regressors"]) regs += r.get<std::string>() + " ";
                auto num = [](const nlohmann::json& v) { return v.is_number() ? fmt(v.get<double>()) : std::string("-"); };
                const char* diag = !cand.value("diagnostics_checked", false) ? "-"
                                   : cand.value("diagnostics_pass", false)   ? "ok"
                                                                             : "fail";
                std::printf("%4d  %-10s  %-10s  %-11s  %-4s  %s%s\n", rank, num(cand["aicc"]).c_str(),
                            num(cand["cv_rmse"]).c_str(), num(cand["test_max_abs_error"]).c_str(), diag, regs.c_str(),
                            idx.get<std::size_t>() == winner ? " <- selected" : "");
                if (++rank > 10) break;
            }
        }
    }
    if (j.contains("midterm")) {
        std::cout << "mid-term regressors:";
        for (const auto& r : j["midterm"]["regressors"]) std::cout << ' ' << r.get<std::string>();
        std::cout << '\n';
    }
    if (j.contains("arima")) std::cout << "mid-term ARIMA: " << j["arima"].value("model", "") << '\n';
    if (j.contains("plan")) std::cout << "hybrid plan: " << j["plan"].get<std::string>() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid hourly electricity-demand forecasting"};
    app.require_subcommand(1);

    Common fit_c, fc_c, ev_c, rep_c;
    std::string fc_from, fc_to, fc_output, ev_from, ev_to, ev_actuals;
    std::string pl_forecast, pl_actuals, pl_output, pl_title;
    bool rep_json = false;

    auto* fit = app.add_subcommand("fit", "fit every model component and write the bundle");
    add_common(fit, fit_c);
    auto* fc = app.add_subcommand("forecast", "write an hourly forecast CSV");
    add_common(fc, fc_c);
    fc->add_option("--from", fc_from, "first day (YYYY-MM-DD), default: first test day");
    fc->add_option("--to", fc_to, "last day, inclusive (YYYY-MM-DD), default: last test day");
    fc->add_option("--output", fc_output, "CSV path, default <out>/forecast.csv");
    auto* ev = app.add_subcommand("evaluate", "score a forecast against actual load");
    add_common(ev, ev_c);
    ev->add_option("--from", ev_from, "first day (YYYY-MM-DD)");
    ev->add_option("--to", ev_to, "last day, inclusive");
    ev->add_option("--actuals", ev_actuals, "hourly load CSV, default: data.load");
    auto* pl = app.add_subcommand("plot", "render a forecast CSV as SVG");
    pl->add_option("--forecast", pl_forecast, "forecast CSV")->required()->check(CLI::ExistingFile);
    pl->add_option("--actuals", pl_actuals, "hourly load CSV")->check(CLI::ExistingFile);
    pl->add_option("--output", pl_output, "SVG path")->required();
    pl->add_option("--title", pl_title, "chart title");
    auto* rep = app.add_subcommand("report", "summarise reports/selection.json");
    add_common(rep, rep_c);
    rep->add_flag("--json", rep_json, "print the raw JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*fit) return cmd_fit(fit_c);
        if (*fc) return cmd_forecast(fc_c, fc_from, fc_to, fc_output);
        if (*ev) return cmd_evaluate(ev_c, ev_from, ev_to, ev_actuals);
        if (*pl) return cmd_plot(pl_forecast, pl_actuals, pl_output, pl_title);
        if (*rep) return cmd_report(rep_c, rep_json);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
