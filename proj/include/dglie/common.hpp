#pragma once

#include <stdexcept>
#include <string>

namespace dglie {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dimension or basis mismatch between operands.
struct DimensionError : Error {
    using Error::Error;
};

// A computation would need degrees beyond the configured cap.
// Raised instead of silently truncating.
struct DegreeCapError : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    int col;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg + " (line " + std::to_string(line_) + ", col " + std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};

}  // namespace dglie
