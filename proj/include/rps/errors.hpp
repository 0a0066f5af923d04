#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rps {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad caller-supplied parameter (grid step, generator spec, tripwire anchor).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Input data that fails validation.
class DataError : public Error {
public:
    using Error::Error;
};

/// A statistic that cannot be computed from the sample.
class StatisticsError : public Error {
public:
    using Error::Error;
};

class InvalidTripwire : public ArgumentError {
public:
    using ArgumentError::ArgumentError;
};

class InvalidStep : public ArgumentError {
public:
    using ArgumentError::ArgumentError;
};

class SpecOutOfSimplex : public ArgumentError {
public:
    using ArgumentError::ArgumentError;
};

class OpenTrajectory : public ArgumentError {
public:
    using ArgumentError::ArgumentError;
};

class PointOnCurve : public ArgumentError {
public:
    using ArgumentError::ArgumentError;
};

class TooShortTrajectory : public DataError {
public:
    using DataError::DataError;
};

class EmptyInput : public DataError {
public:
    using DataError::DataError;
};

class EmptyFile : public DataError {
public:
    using DataError::DataError;
};

class MissingColumn : public DataError {
public:
    using DataError::DataError;
};

class RowValidation : public DataError {
public:
    RowValidation(std::size_t row, const std::string& reason)
        : DataError("row " + std::to_string(row) + ": " + reason), row_(row) {}

    /// 1-based line number in the source file (the header is line 1).
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

class DegenerateSample : public StatisticsError {
public:
    using StatisticsError::StatisticsError;
};

}  // namespace rps
