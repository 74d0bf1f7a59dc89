#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace loadcast {

/// Input rejected by a loader. Carries the 1-based data row (0 when the
/// problem is not tied to a single row, e.g. coverage across indicators).
class DataError : public std::runtime_error {
public:
    DataError(const std::string& what, std::size_t row = 0)
        : std::runtime_error(what), row_(row) {}
    [[nodiscard]] std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// Requested calendar range is not covered by the data.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Components handed to an additive operation do not share a calendar.
class AlignmentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Design matrix is rank deficient.
class SingularDesignError : public std::runtime_error {
public:
    SingularDesignError(const std::string& what, std::vector<std::string> columns)
        : std::runtime_error(what), columns_(std::move(columns)) {}
    /// Columns that are linear combinations of earlier ones.
    [[nodiscard]] const std::vector<std::string>& collinear_columns() const noexcept {
        return columns_;
    }

private:
    std::vector<std::string> columns_;
};

/// Statistical routine received a degenerate sample (constant, too short...).
class DegenerateInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Remote macro-indicator request failed or returned unusable data.
class FetchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical fit failed (non-convergence, NaN loss...).
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Configuration document is malformed or inconsistent.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace loadcast
