#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stylized {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fewer observations than an operation needs.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Zero-variance (constant) input where a scale-normalized statistic is required.
class DegenerateSeriesError : public Error {
public:
    using Error::Error;
};

/// Every optimizer start failed to produce a finite likelihood.
class EstimationError : public Error {
public:
    using Error::Error;
};

/// Malformed input file. `row()` is the 1-based line number in the file, 0 if not row-specific.
class IngestError : public Error {
public:
    IngestError(const std::string& what, std::size_t row)
        : Error(row == 0 ? what : "row " + std::to_string(row) + ": " + what), row_(row) {}

    [[nodiscard]] std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

}  // namespace stylized
