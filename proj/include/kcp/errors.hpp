#pragma once

#include <stdexcept>
#include <string>

namespace kcp {

// Base class for every failure the toolkit reports. Subclasses correspond
// to the failure modes named in the module contracts.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SyntaxError : Error {
    int line;
    int column;
    SyntaxError(const std::string& what, int line_, int column_)
        : Error(what + " (line " + std::to_string(line_) + ", column " +
                std::to_string(column_) + ")"),
          line(line_), column(column_) {}
};

struct UnknownSymbol : Error { using Error::Error; };
struct NonInvertibleDivisor : Error { using Error::Error; };
struct InvalidRadical : Error { using Error::Error; };
struct UnknownSystem : Error { using Error::Error; };
struct UnknownParameter : Error { using Error::Error; };
struct UnknownGenerator : Error { using Error::Error; };
struct InconsistentRadical : Error { using Error::Error; };
struct DivisionByZeroAtPoint : Error { using Error::Error; };
struct UndefinedDegree : Error { using Error::Error; };
struct SingularPoint : Error { using Error::Error; };
struct CapTooLarge : Error { using Error::Error; };
struct FitInfeasible : Error { using Error::Error; };
struct FitUnavailable : Error { using Error::Error; };

} // namespace kcp
