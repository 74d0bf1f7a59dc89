#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "loadcast/calendar.hpp"

namespace loadcast {

/// Contiguous hourly samples: value i belongs to `start + i hours`.
/// Construction rejects non-finite values; positivity is checked separately
/// because short-term deviations are signed.
class HourlySeries {
public:
    HourlySeries() = default;
    HourlySeries(Hour start, std::vector<double> values);

    [[nodiscard]] Hour start() const noexcept { return start_; }
    /// One past the last covered hour.
    [[nodiscard]] Hour end() const noexcept {
        return start_ + std::chrono::hours{static_cast<long>(values_.size())};
    }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] Hour time_at(std::size_t i) const {
        return start_ + std::chrono::hours{static_cast<long>(i)};
    }
    [[nodiscard]] std::optional<std::size_t> index_of(Hour h) const;
    [[nodiscard]] bool covers(Hour from, Hour to) const { return from >= start_ && to <= end() && from <= to; }

    /// Hours in [from, to). Throws RangeError when not covered.
    [[nodiscard]] HourlySeries slice(Hour from, Hour to) const;

    /// Throws DataError naming the first non-positive sample.
    void require_positive() const;

    friend bool operator==(const HourlySeries&, const HourlySeries&) = default;

private:
    Hour start_{};
    std::vector<double> values_;
};

/// Contiguous daily samples: value i belongs to `start + i days`.
class DailySeries {
public:
    DailySeries() = default;
    DailySeries(Date start, std::vector<double> values);

    [[nodiscard]] Date start() const noexcept { return start_; }
    [[nodiscard]] Date end() const noexcept {
        return start_ + std::chrono::days{static_cast<long>(values_.size())};
    }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] Date date_at(std::size_t i) const {
        return start_ + std::chrono::days{static_cast<long>(i)};
    }
    [[nodiscard]] std::optional<std::size_t> index_of(Date d) const;
    [[nodiscard]] bool covers(Date from, Date to) const { return from >= start_ && to <= end() && from <= to; }
    /// Value on `d`; throws RangeError when not covered.
    [[nodiscard]] double at(Date d) const;

    /// Days in [from, to). Throws RangeError when not covered.
    [[nodiscard]] DailySeries slice(Date from, Date to) const;

    friend bool operator==(const DailySeries&, const DailySeries&) = default;

private:
    Date start_{};
    std::vector<double> values_;
};

/// Contiguous yearly samples starting at `first_year`.
class YearlySeries {
public:
    YearlySeries() = default;
    YearlySeries(int first_year, std::vector<double> values);

    [[nodiscard]] int first_year() const noexcept { return first_year_; }
    [[nodiscard]] int last_year() const noexcept {
        return first_year_ + static_cast<int>(values_.size()) - 1;
    }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] bool covers(int year) const noexcept {
        return !values_.empty() && year >= first_year_ && year <= last_year();
    }
    /// Value for `year`; throws RangeError when not covered.
    [[nodiscard]] double at(int year) const;

    friend bool operator==(const YearlySeries&, const YearlySeries&) = default;

private:
    int first_year_ = 0;
    std::vector<double> values_;
};

}  // namespace loadcast
