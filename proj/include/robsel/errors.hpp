#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace robsel {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed parameters, unparsable files, out-of-range arguments. CLI exit code 2.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

// File could not be parsed into an instance.
class ParseError : public InvalidInputError {
public:
    using InvalidInputError::InvalidInputError;
};

// An instance failed invariant checks; carries the full violation report.
class ValidationError : public InvalidInputError {
public:
    explicit ValidationError(std::vector<std::string> report)
        : InvalidInputError(join(report)), report_(std::move(report)) {}

    const std::vector<std::string>& report() const { return report_; }

private:
    static std::string join(const std::vector<std::string>& report) {
        std::string msg = "instance validation failed:";
        for (const auto& line : report) {
            msg += "\n  - " + line;
        }
        return msg;
    }

    std::vector<std::string> report_;
};

// Exhaustive enumeration would exceed the evaluation cap. CLI exit code 3.
class EnumerationRefusedError : public Error {
public:
    using Error::Error;
};

// A ratio formula hit a zero pairwise penalty difference in some row.
class DegenerateRatioError : public Error {
public:
    DegenerateRatioError(int row, double xi_floor)
        : Error("degenerate ratio in row " + std::to_string(row) +
                ": minimum pairwise penalty difference is " + std::to_string(xi_floor)),
          row_(row),
          xi_floor_(xi_floor) {}

    int row() const { return row_; }
    double xi_floor() const { return xi_floor_; }

private:
    int row_;
    double xi_floor_;
};

}  // namespace robsel
