#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "loadcast/arima.hpp"
#include "loadcast/arima_search.hpp"
#include "loadcast/correlogram.hpp"
#include "loadcast/hybrid.hpp"
#include "loadcast/ingest.hpp"
#include "loadcast/metrics.hpp"
#include "loadcast/regression.hpp"
#include "loadcast/seq2seq.hpp"
#include "loadcast/series.hpp"
#include "loadcast/shortterm.hpp"

namespace loadcast::pipeline {

/// Failure inside one pipeline stage; what() is prefixed with the stage name.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
    [[nodiscard]] const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

struct DataPaths {
    std::filesystem::path load;
    std::filesystem::path temperature;
    std::filesystem::path macro;
    std::filesystem::path holidays;        ///< empty: bundled calendar
    std::filesystem::path yearly_load;     ///< optional yearly means before the hourly data
    std::filesystem::path future_temperature;  ///< optional, merged over `temperature`
    std::filesystem::path future_macro;        ///< optional, merged over `macro`
};

/// Inclusive calendar-year span.
struct YearSpan {
    int first = 0;
    int last = -1;

    [[nodiscard]] Date begin() const { return first_day_of_year(first); }
    [[nodiscard]] Date end() const { return first_day_of_year(last + 1); }
};

struct LongtermSettings {
    std::vector<std::string> indicators;  ///< empty: every indicator in the macro file
    std::vector<std::string> forced;
    std::size_t keep_n = 1000;
    std::size_t cv_folds = 5;
    double cull_factor = 1.5;
    bool check_diagnostics = true;
    double normality_alpha = 0.05;
    double max_vif = 10.0;
    std::optional<int> first_year;  ///< first year of the yearly fit (default: earliest covered)
    std::string holdout = "test";   ///< "test" ranks on the test years, "cv" on CV-RMSE only
};

struct MidtermSettings {
    std::string mode = "search";          ///< "search" or "fixed"
    std::vector<unsigned> months;         ///< month dummies for "fixed"
    std::vector<std::string> candidates;  ///< search pool; empty: every non-weekday column
    double t_ref = 18.33;
};

struct ArimaSettings {
    std::size_t max_lag = 40;
    std::optional<int> max_p;  ///< caps on the correlogram bounds
    std::optional<int> max_q;
    std::optional<arima::OrderBounds> fixed_orders;
    std::optional<int> d;
    bool css_only = false;
    int max_iterations = 500;
    bool screen_exogenous = true;
    double alpha = 0.05;
};

struct Seq2SeqSettings {
    bool enabled = true;
    seq2seq::Seq2SeqConfig architecture;
    seq2seq::TrainConfig train;
    std::size_t stride = 1;
};

struct HybridSettings {
    std::vector<hybrid::Variant> variants = hybrid::all_variants();
    hybrid::ResidualSum residual_sum = hybrid::ResidualSum::absolute;
    std::optional<hybrid::Variant> variant;  ///< force a variant instead of selecting
};

struct PipelineConfig {
    DataPaths data;
    YearSpan train;
    YearSpan test;
    LongtermSettings longterm;
    MidtermSettings midterm;
    ArimaSettings arima;
    Seq2SeqSettings seq2seq;
    shortterm::ShorttermConfig shortterm;
    HybridSettings hybrid;
    std::filesystem::path output_dir = "out";
    std::uint64_t seed = 42;
    unsigned jobs = 1;
    bool repeat_climatology = false;

    /// Relative paths resolve against `base_dir`. Throws ConfigError.
    [[nodiscard]] static PipelineConfig from_json(const nlohmann::json& j,
                                                  const std::filesystem::path& base_dir = {});
    [[nodiscard]] nlohmann::json to_json() const;
    void validate() const;
};

/// Parses and validates a config file without touching any data file.
[[nodiscard]] PipelineConfig load_config(const std::filesystem::path& path);

/// Everything `forecast` needs, persisted under `<out>/models`.
struct Bundle {
    YearSpan train;
    YearSpan test;
    std::vector<std::string> long_indicators;
    regression::LinearModel long_model;
    regression::LinearModel mid_model;
    double t_ref = 18.33;
    arima::ArimaModel arima;
    std::optional<seq2seq::Seq2SeqModel> lstm;
    std::vector<double> lstm_history;  ///< raw training residuals fed to the encoder
    shortterm::ProfileModelSet short_model;
    hybrid::HybridPlan plan;
    double hourly_scale = 1.0;  ///< naive one-step MAD of the training load
    double mid_scale = 1.0;     ///< same for the training mid-term component

    /// Day after the last training day; every residual forecast starts here.
    [[nodiscard]] Date origin() const { return train.end(); }
};

void save_bundle(const Bundle& bundle, const std::filesystem::path& models_dir);
[[nodiscard]] Bundle load_bundle(const std::filesystem::path& models_dir);

struct FitOutcome {
    Bundle bundle;
    nlohmann::json report;  ///< written to reports/selection.json
};

/// Runs every fitting stage and, when `write` is set, persists the bundle and
/// the selection report under config.output_dir.
FitOutcome run_fit(const PipelineConfig& config, bool write = true);

struct ForecastResult {
    HourlySeries point;
    std::vector<double> lo80, hi80, lo95, hi95;
    YearlySeries long_term;
    DailySeries mid_term;
    HourlySeries short_term;
    /// Mid-term forecast of every variant the bundle can produce, per day.
    std::vector<hybrid::HybridCandidate> mid_variants;
};

/// Hourly forecast over [from, to) (midnight bounds, from >= bundle origin).
[[nodiscard]] ForecastResult run_forecast(const PipelineConfig& config, const Bundle& bundle, Date from, Date to);

/// `timestamp,forecast_mw,lo80,hi80,lo95,hi95` with three decimals.
[[nodiscard]] std::string forecast_csv(const ForecastResult& result);

struct ForecastTable {
    std::vector<Hour> times;
    std::vector<double> forecast;
    std::vector<double> lo80, hi80, lo95, hi95;  ///< empty when the columns are absent
};

/// Reads a forecast CSV; the four bound columns are optional as a group.
[[nodiscard]] ForecastTable read_forecast_csv(const std::filesystem::path& path);

struct Evaluation {
    std::vector<hybrid::ComparisonRow> rows;         ///< per year, then the whole range
    std::optional<hybrid::HybridSelection> variants; ///< needs whole calendar years

    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] std::string rows_csv() const;
};

/// Compares a fresh forecast over [from, to) with `actuals`. Throws RangeError
/// when the actuals do not cover the range.
[[nodiscard]] Evaluation run_evaluate(const PipelineConfig& config, const Bundle& bundle,
                                      const HourlySeries& actuals, Date from, Date to);

}  // namespace loadcast::pipeline
