#pragma once

#include <stdexcept>
#include <string>

namespace pompeiu {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (group files, subset lists). Carries a 1-based
// line/column position when known; 0 means "not applicable".
struct ParseError : Error {
    int line = 0;
    int col = 0;
    ParseError(const std::string& msg, int line_ = 0, int col_ = 0)
        : Error(format(msg, line_, col_)), line(line_), col(col_) {}

private:
    static std::string format(const std::string& msg, int line, int col) {
        if (line == 0) return msg;
        return "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg;
    }
};

// A documented precondition was violated (empty subset, group mismatch,
// order bound exceeded, ...).
struct PreconditionError : Error {
    using Error::Error;
};

// An internal cross-check failed. This never indicates bad input; it means
// two independent computations of the same quantity disagreed.
struct ConsistencyError : Error {
    using Error::Error;
};

} // namespace pompeiu
