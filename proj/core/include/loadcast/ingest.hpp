#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "loadcast/series.hpp"

namespace loadcast::ingest {

// CSV dialect for every file here: comma separated, '.' decimal point,
// UTF-8, exactly one header row. Line numbers in errors are 1-based file
// lines (the header is line 1).

struct HourlyCsvSchema {
    std::string timestamp_column = "timestamp";
    std::string value_column = "load_mw";
};

/// `timestamp,load_mw`. Rejects gaps, duplicates, out-of-order rows,
/// non-positive loads and malformed rows with a DataError.
[[nodiscard]] HourlySeries load_hourly_csv(const std::filesystem::path& path,
                                           const HourlyCsvSchema& schema = {});
void save_hourly_csv(const std::filesystem::path& path, const HourlySeries& series,
                     const HourlyCsvSchema& schema = {});

/// Daily national mean temperature in °C, bounded to [-60, 60].
class TemperatureSeries {
public:
    static constexpr double kMinCelsius = -60.0;
    static constexpr double kMaxCelsius = 60.0;

    TemperatureSeries() = default;
    explicit TemperatureSeries(DailySeries daily);

    [[nodiscard]] const DailySeries& daily() const noexcept { return daily_; }
    [[nodiscard]] double at(Date d) const { return daily_.at(d); }
    [[nodiscard]] bool covers(Date from, Date to) const { return daily_.covers(from, to); }

private:
    DailySeries daily_;
};

/// `date,temp_c`
[[nodiscard]] TemperatureSeries load_temperature_csv(const std::filesystem::path& path);
void save_temperature_csv(const std::filesystem::path& path, const TemperatureSeries& temp);

/// Yearly macroeconomic indicators keyed by short id; all share one year range.
class MacroTable {
public:
    MacroTable() = default;
    explicit MacroTable(std::map<std::string, YearlySeries> indicators);

    [[nodiscard]] const YearlySeries& at(const std::string& id) const;
    [[nodiscard]] bool contains(const std::string& id) const { return series_.count(id) != 0; }
    [[nodiscard]] std::vector<std::string> ids() const;
    [[nodiscard]] std::size_t size() const noexcept { return series_.size(); }
    [[nodiscard]] int first_year() const noexcept { return first_year_; }
    [[nodiscard]] int last_year() const noexcept { return last_year_; }
    [[nodiscard]] const std::map<std::string, YearlySeries>& indicators() const noexcept {
        return series_;
    }

private:
    std::map<std::string, YearlySeries> series_;
    int first_year_ = 0;
    int last_year_ = -1;
};

/// `year,indicator,value`. Throws DataError on ragged coverage.
[[nodiscard]] MacroTable load_macro_csv(const std::filesystem::path& path);
void save_macro_csv(const std::filesystem::path& path, const MacroTable& table);

/// `year,mean_mw`: yearly mean hourly load for years without hourly data.
[[nodiscard]] YearlySeries load_yearly_csv(const std::filesystem::path& path);
void save_yearly_csv(const std::filesystem::path& path, const YearlySeries& series);

/// Public holidays.
class HolidaySet {
public:
    HolidaySet() = default;
    explicit HolidaySet(std::map<Date, std::string> named) : named_(std::move(named)) {}

    [[nodiscard]] bool contains(Date d) const { return named_.count(d) != 0; }
    [[nodiscard]] std::size_t size() const noexcept { return named_.size(); }
    [[nodiscard]] const std::map<Date, std::string>& entries() const noexcept { return named_; }
    /// Holidays inside [from, to).
    [[nodiscard]] HolidaySet restricted(Date from, Date to) const;

private:
    std::map<Date, std::string> named_;
};

/// `date,name`
[[nodiscard]] HolidaySet load_holidays_csv(const std::filesystem::path& path);
void save_holidays_csv(const std::filesystem::path& path, const HolidaySet& holidays);

/// Path of the bundled Ukrainian public-holiday calendar (2001-2025).
[[nodiscard]] std::filesystem::path bundled_holidays_path();

struct MacroIndicator {
    std::string id;           ///< key used in macro.csv and configs
    std::string remote_code;  ///< World Bank indicator code
    std::string description;
};

/// Default screening set: the four indicators of the fitted long-term model
/// followed by 14 standard development indicators.
[[nodiscard]] std::span<const MacroIndicator> default_macro_indicators();

struct YearRange {
    int first = 0;
    int last = -1;
};

struct FetchOptions {
    int timeout_seconds = 30;
    int per_page = 100;
    int max_pages = 100;
};

/// GET `<base_url>?indicator=..&country=..&date=YYYY:YYYY&format=json&page=N`.
///
/// Accepts either a flat JSON array of `{year, value}` records or the
/// World-Bank paged form `[{"page":1,"pages":N,...}, [{"date":"2018","value":..}, ...]]`,
/// following pages until exhausted. Null values, HTTP failures and malformed
/// payloads raise FetchError; callers fall back to load_macro_csv.
[[nodiscard]] YearlySeries fetch_macro_http(const std::string& base_url, const std::string& indicator,
                                            const std::string& country, YearRange years,
                                            const FetchOptions& options = {});

}  // namespace loadcast::ingest
