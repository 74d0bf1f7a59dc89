#include "loadcast/ingest.hpp"

#include <array>
#include <sstream>

#include "csv.hpp"
#include "loadcast/atomic_file.hpp"
#include "loadcast/error.hpp"

namespace loadcast::ingest {

namespace chr = std::chrono;

namespace {

std::string where(const std::filesystem::path& path, std::size_t line) {
    return path.string() + ": line " + std::to_string(line) + ": ";
}

std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    return out + "\"";
}

}  // namespace

HourlySeries load_hourly_csv(const std::filesystem::path& path, const HourlyCsvSchema& schema) {
    const auto table = csv::read(path, {schema.timestamp_column, schema.value_column});
    if (table.rows.empty()) throw DataError(path.string() + ": no data rows", 1);

    std::vector<double> values;
    values.reserve(table.rows.size());
    Hour start{};
    Hour prev{};
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::size_t line = table.lines[r];
        Hour t;
        try {
            t = parse_iso_hour(csv::trim(table.rows[r][0]));
        } catch (const std::invalid_argument& e) {
            throw DataError(where(path, line) + e.what(), line);
        }
        const double v = csv::parse_double(table.rows[r][1], line, schema.value_column);
        if (!(v > 0.0)) {
            throw DataError(where(path, line) + "non-positive load " + csv::format_double(v), line);
        }
        if (r == 0) {
            start = t;
        } else {
            const Hour expected = prev + chr::hours{1};
            if (t > expected) {
                throw DataError(where(path, line) + "gap: missing timestamp " + format_iso_hour(expected),
                                line);
            }
            if (t < expected) {
                if (t >= start) {
                    throw DataError(where(path, line) + "duplicate timestamp " + format_iso_hour(t), line);
                }
                throw DataError(where(path, line) + "timestamp " + format_iso_hour(t) + " out of order",
                                line);
            }
        }
        prev = t;
        values.push_back(v);
    }
    return HourlySeries(start, std::move(values));
}

void save_hourly_csv(const std::filesystem::path& path, const HourlySeries& series,
                     const HourlyCsvSchema& schema) {
    std::string out = schema.timestamp_column + "," + schema.value_column + "\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out += format_iso_hour(series.time_at(i));
        out += ',';
        out += csv::format_double(series[i]);
        out += '\n';
    }
    write_file_atomic(path, out);
}

TemperatureSeries::TemperatureSeries(DailySeries daily) : daily_(std::move(daily)) {
    for (std::size_t i = 0; i < daily_.size(); ++i) {
        const double v = daily_[i];
        if (v < kMinCelsius || v > kMaxCelsius) {
            throw DataError("temperature " + csv::format_double(v) + " on " +
                            format_iso_date(daily_.date_at(i)) + " outside [-60, 60] degC");
        }
    }
}

TemperatureSeries load_temperature_csv(const std::filesystem::path& path) {
    const auto table = csv::read(path, {"date", "temp_c"});
    if (table.rows.empty()) throw DataError(path.string() + ": no data rows", 1);
    std::vector<double> values;
    Date start{};
    Date prev{};
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::size_t line = table.lines[r];
        Date d;
        try {
            d = parse_iso_date(csv::trim(table.rows[r][0]));
        } catch (const std::invalid_argument& e) {
            throw DataError(where(path, line) + e.what(), line);
        }
        const double v = csv::parse_double(table.rows[r][1], line, "temp_c");
        if (v < TemperatureSeries::kMinCelsius || v > TemperatureSeries::kMaxCelsius) {
            throw DataError(where(path, line) + "temperature " + csv::format_double(v) +
                                " outside [-60, 60] degC",
                            line);
        }
        if (r == 0) {
            start = d;
        } else {
            const Date expected = prev + chr::days{1};
            if (d > expected) {
                throw DataError(where(path, line) + "gap: missing date " + format_iso_date(expected), line);
            }
            if (d < expected) {
                if (d == prev) {
                    throw DataError(where(path, line) + "duplicate date " + format_iso_date(d), line);
                }
                throw DataError(where(path, line) + "date " + format_iso_date(d) + " out of order", line);
            }
        }
        prev = d;
        values.push_back(v);
    }
    return TemperatureSeries(DailySeries(start, std::move(values)));
}

void save_temperature_csv(const std::filesystem::path& path, const TemperatureSeries& temp) {
    std::string out = "date,temp_c\n";
    const auto& d = temp.daily();
    for (std::size_t i = 0; i < d.size(); ++i) {
        out += format_iso_date(d.date_at(i)) + "," + csv::format_double(d[i]) + "\n";
    }
    write_file_atomic(path, out);
}

MacroTable::MacroTable(std::map<std::string, YearlySeries> indicators) : series_(std::move(indicators)) {
    bool first = true;
    for (const auto& [id, s] : series_) {
        if (id.empty()) throw DataError("empty indicator id");
        if (s.empty()) throw DataError("indicator '" + id + "' has no values");
        if (first) {
            first_year_ = s.first_year();
            last_year_ = s.last_year();
            first = false;
        } else if (s.first_year() != first_year_ || s.last_year() != last_year_) {
            throw DataError("indicator '" + id + "' covers " + std::to_string(s.first_year()) + "-" +
                            std::to_string(s.last_year()) + ", others cover " +
                            std::to_string(first_year_) + "-" + std::to_string(last_year_));
        }
    }
}

const YearlySeries& MacroTable::at(const std::string& id) const {
    const auto it = series_.find(id);
    if (it == series_.end()) throw DataError("macro indicator '" + id + "' not available");
    return it->second;
}

std::vector<std::string> MacroTable::ids() const {
    std::vector<std::string> out;
    for (const auto& [id, s] : series_) out.push_back(id);
    return out;
}

MacroTable load_macro_csv(const std::filesystem::path& path) {
    const auto table = csv::read(path, {"year", "indicator", "value"});
    std::map<std::string, std::map<int, double>> raw;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::size_t line = table.lines[r];
        const int year = csv::parse_int(table.rows[r][0], line, "year");
        const std::string id = csv::trim(table.rows[r][1]);
        if (id.empty()) throw DataError(where(path, line) + "empty indicator id", line);
        const double v = csv::parse_double(table.rows[r][2], line, "value");
        if (!raw[id].emplace(year, v).second) {
            throw DataError(where(path, line) + "duplicate entry for " + id + " " + std::to_string(year),
                            line);
        }
    }
    if (raw.empty()) throw DataError(path.string() + ": no data rows", 1);

    int lo = raw.begin()->second.begin()->first;
    int hi = raw.begin()->second.rbegin()->first;
    for (const auto& [id, by_year] : raw) {
        lo = std::min(lo, by_year.begin()->first);
        hi = std::max(hi, by_year.rbegin()->first);
    }
    std::map<std::string, YearlySeries> series;
    for (const auto& [id, by_year] : raw) {
        std::vector<double> values;
        for (int y = lo; y <= hi; ++y) {
            const auto it = by_year.find(y);
            if (it == by_year.end()) {
                throw DataError(path.string() + ": coverage: indicator '" + id + "' missing year " +
                                std::to_string(y));
            }
            values.push_back(it->second);
        }
        series.emplace(id, YearlySeries(lo, std::move(values)));
    }
    return MacroTable(std::move(series));
}

void save_macro_csv(const std::filesystem::path& path, const MacroTable& table) {
    std::string out = "year,indicator,value\n";
    for (const auto& [id, s] : table.indicators()) {
        for (int y = s.first_year(); y <= s.last_year(); ++y) {
            out += std::to_string(y) + "," + quote_if_needed(id) + "," + csv::format_double(s.at(y)) + "\n";
        }
    }
    write_file_atomic(path, out);
}

YearlySeries load_yearly_csv(const std::filesystem::path& path) {
    const auto table = csv::read(path, {"year", "mean_mw"});
    if (table.rows.empty()) throw DataError(path.string() + ": no data rows", 1);
    std::vector<double> values;
    int first = 0;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::size_t line = table.lines[r];
        const int year = csv::parse_int(table.rows[r][0], line, "year");
        const double v = csv::parse_double(table.rows[r][1], line, "mean_mw");
        if (!(v > 0.0)) throw DataError(where(path, line) + "non-positive load", line);
        if (r == 0) {
            first = year;
        } else if (year != first + static_cast<int>(r)) {
            throw DataError(where(path, line) + "years must be contiguous and ascending", line);
        }
        values.push_back(v);
    }
    return YearlySeries(first, std::move(values));
}

void save_yearly_csv(const std::filesystem::path& path, const YearlySeries& series) {
    std::string out = "year,mean_mw\n";
    for (int y = series.first_year(); y <= series.last_year(); ++y) {
        out += std::to_string(y) + "," + csv::format_double(series.at(y)) + "\n";
    }
    write_file_atomic(path, out);
}

HolidaySet HolidaySet::restricted(Date from, Date to) const {
    std::map<Date, std::string> out;
    for (auto it = named_.lower_bound(from); it != named_.end() && it->first < to; ++it) out.insert(*it);
    return HolidaySet(std::move(out));
}

HolidaySet load_holidays_csv(const std::filesystem::path& path) {
    const auto table = csv::read(path, {"date", "name"});
    std::map<Date, std::string> named;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::size_t line = table.lines[r];
        Date d;
        try {
            d = parse_iso_date(csv::trim(table.rows[r][0]));
        } catch (const std::invalid_argument& e) {
            throw DataError(where(path, line) + e.what(), line);
        }
        const std::string name = csv::trim(table.rows[r][1]);
        auto [it, inserted] = named.emplace(d, name);
        if (!inserted && !name.empty()) it->second += "; " + name;
    }
    return HolidaySet(std::move(named));
}

void save_holidays_csv(const std::filesystem::path& path, const HolidaySet& holidays) {
    std::string out = "date,name\n";
    for (const auto& [d, name] : holidays.entries()) {
        out += format_iso_date(d) + "," + quote_if_needed(name) + "\n";
    }
    write_file_atomic(path, out);
}

std::filesystem::path bundled_holidays_path() {
    return std::filesystem::path(LOADCAST_DATA_DIR) / "holidays_ua.csv";
}

std::span<const MacroIndicator> default_macro_indicators() {
    static const std::array<MacroIndicator, 18> kIndicators{{
        {"gdp_deflator", "NY.GDP.DEFL.KD.ZG", "Inflation, GDP deflator (annual %)"},
        {"industry_va", "NV.IND.TOTL.KD", "Industry value added (constant 2015 US$)"},
        {"gdp_growth", "NY.GDP.MKTP.KD.ZG", "GDP growth (annual %)"},
        {"services_va", "NV.SRV.TOTL.CD", "Services value added (current US$)"},
        {"population", "SP.POP.TOTL", "Population, total"},
        {"population_growth", "SP.POP.GROW", "Population growth (annual %)"},
        {"urban_population", "SP.URB.TOTL.IN.ZS", "Urban population (% of total)"},
        {"gdp", "NY.GDP.MKTP.KD", "GDP (constant 2015 US$)"},
        {"gdp_per_capita", "NY.GDP.PCAP.KD", "GDP per capita (constant 2015 US$)"},
        {"inflation_cpi", "FP.CPI.TOTL.ZG", "Inflation, consumer prices (annual %)"},
        {"agriculture_va", "NV.AGR.TOTL.KD", "Agriculture value added (constant 2015 US$)"},
        {"manufacturing_va", "NV.IND.MANF.KD", "Manufacturing value added (constant 2015 US$)"},
        {"exports", "NE.EXP.GNFS.KD", "Exports of goods and services (constant 2015 US$)"},
        {"imports", "NE.IMP.GNFS.KD", "Imports of goods and services (constant 2015 US$)"},
        {"capital_formation", "NE.GDI.TOTL.KD", "Gross capital formation (constant 2015 US$)"},
        {"household_consumption", "NE.CON.PRVT.KD", "Households final consumption (constant 2015 US$)"},
        {"unemployment", "SL.UEM.TOTL.ZS", "Unemployment (% of labor force)"},
        {"energy_use_per_capita", "EG.USE.PCAP.KG.OE", "Energy use (kg of oil equivalent per capita)"},
    }};
    return kIndicators;
}

}  // namespace loadcast::ingest
