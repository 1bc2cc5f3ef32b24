#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace windar {

// Base of everything thrown by this library. The three subcategories map
// onto the CLI exit codes: configuration (1), data (2), numerical (3).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class DataError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

// --- data errors ---

class EmptySeries final : public DataError {
public:
    EmptySeries() : DataError("series contains no samples") {}
};

class NonFiniteSample final : public DataError {
public:
    explicit NonFiniteSample(std::size_t index)
        : DataError("non-finite sample at index " + std::to_string(index)), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class SeriesTooShort final : public DataError {
public:
    SeriesTooShort(std::size_t length, std::size_t required)
        : DataError("series of length " + std::to_string(length) + " is too short, need more than "
                    + std::to_string(required) + " samples") {}
};

class LengthMismatch final : public DataError {
public:
    LengthMismatch(std::size_t lhs, std::size_t rhs)
        : DataError("length mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

class EmptyInput final : public DataError {
public:
    explicit EmptyInput(const std::string& what) : DataError(what + ": input is empty") {}
};

class FileNotFound final : public DataError {
public:
    explicit FileNotFound(const std::string& path) : DataError("cannot open file: " + path) {}
};

class ParseError final : public DataError {
public:
    ParseError(std::size_t line, const std::string& detail)
        : DataError("parse error on line " + std::to_string(line) + ": " + detail), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ColumnNotFound final : public DataError {
public:
    explicit ColumnNotFound(const std::string& column)
        : DataError("column not found: " + column) {}
};

// --- configuration errors ---

class InvalidLength final : public ConfigError {
public:
    explicit InvalidLength(const std::string& what) : ConfigError(what) {}
};

class LagTooLarge final : public ConfigError {
public:
    LagTooLarge(std::size_t lag, std::size_t length)
        : ConfigError("lag " + std::to_string(lag) + " too large for series of length "
                      + std::to_string(length)) {}
};

class PhiOutOfRange final : public ConfigError {
public:
    explicit PhiOutOfRange(double phi)
        : ConfigError("c1 + c2 must exceed 4 for the constriction rule, got "
                      + std::to_string(phi)) {}
};

class InvalidModelSpec final : public ConfigError {
public:
    explicit InvalidModelSpec(const std::string& what) : ConfigError(what) {}
};

// --- numerical errors ---

class ConstantSeries final : public NumericError {
public:
    ConstantSeries() : NumericError("series is constant, zero-lag autocovariance vanishes") {}
};

class NumericallySingular final : public NumericError {
public:
    explicit NumericallySingular(const std::string& what) : NumericError(what) {}
};

class SingularDesign final : public NumericError {
public:
    explicit SingularDesign(const std::string& what) : NumericError(what) {}
};

class ObjectiveNonFinite final : public NumericError {
public:
    ObjectiveNonFinite() : NumericError("objective returned a non-finite value") {}
};

class NonPositiveVariance final : public NumericError {
public:
    explicit NonPositiveVariance(double value)
        : NumericError("variance estimate must be positive, got " + std::to_string(value)) {}
};

class DegenerateRatio final : public NumericError {
public:
    DegenerateRatio(std::size_t h, std::size_t H)
        : NumericError("parameter count h = " + std::to_string(h)
                       + " must be smaller than sample count H = " + std::to_string(H)) {}
};

class NonPositiveBaseline final : public NumericError {
public:
    explicit NonPositiveBaseline(double value)
        : NumericError("baseline error must be positive, got " + std::to_string(value)) {}
};

class ConstantActual final : public NumericError {
public:
    ConstantActual() : NumericError("actual data is constant, normalization variance is zero") {}
};

}  // namespace windar
