#include "loadcast/series.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "loadcast/error.hpp"

namespace loadcast {

namespace {

void require_finite(std::span<const double> values, const char* what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw std::invalid_argument(std::string(what) + ": non-finite value at index " +
                                        std::to_string(i));
        }
    }
}

}  // namespace

HourlySeries::HourlySeries(Hour start, std::vector<double> values)
    : start_(start), values_(std::move(values)) {
    require_finite(values_, "HourlySeries");
}

std::optional<std::size_t> HourlySeries::index_of(Hour h) const {
    if (h < start_ || h >= end()) return std::nullopt;
    return static_cast<std::size_t>((h - start_).count());
}

HourlySeries HourlySeries::slice(Hour from, Hour to) const {
    if (!covers(from, to)) {
        throw RangeError("hourly range [" + format_iso_hour(from) + ", " + format_iso_hour(to) +
                         ") not covered by series");
    }
    const auto first = static_cast<std::size_t>((from - start_).count());
    const auto count = static_cast<std::size_t>((to - from).count());
    return HourlySeries(from, std::vector<double>(values_.begin() + static_cast<long>(first),
                                                  values_.begin() + static_cast<long>(first + count)));
}

void HourlySeries::require_positive() const {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] > 0.0)) {
            throw DataError("non-positive load " + std::to_string(values_[i]) + " at " +
                            format_iso_hour(time_at(i)));
        }
    }
}

DailySeries::DailySeries(Date start, std::vector<double> values)
    : start_(start), values_(std::move(values)) {
    require_finite(values_, "DailySeries");
}

std::optional<std::size_t> DailySeries::index_of(Date d) const {
    if (d < start_ || d >= end()) return std::nullopt;
    return static_cast<std::size_t>((d - start_).count());
}

double DailySeries::at(Date d) const {
    const auto i = index_of(d);
    if (!i) throw RangeError("date " + format_iso_date(d) + " not covered by series");
    return values_[*i];
}

DailySeries DailySeries::slice(Date from, Date to) const {
    if (!covers(from, to)) {
        throw RangeError("daily range [" + format_iso_date(from) + ", " + format_iso_date(to) +
                         ") not covered by series");
    }
    const auto first = static_cast<std::size_t>((from - start_).count());
    const auto count = static_cast<std::size_t>((to - from).count());
    return DailySeries(from, std::vector<double>(values_.begin() + static_cast<long>(first),
                                                 values_.begin() + static_cast<long>(first + count)));
}

YearlySeries::YearlySeries(int first_year, std::vector<double> values)
    : first_year_(first_year), values_(std::move(values)) {
    require_finite(values_, "YearlySeries");
}

double YearlySeries::at(int year) const {
    if (!covers(year)) throw RangeError("year " + std::to_string(year) + " not covered by series");
    return values_[static_cast<std::size_t>(year - first_year_)];
}

}  // namespace loadcast
