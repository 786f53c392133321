#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hauteur {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// factorization (integer or polynomial) past the desk-scale cap
struct FactorRangeError : Error {
    using Error::Error;
};

struct ValuationOfZeroError : Error {
    ValuationOfZeroError() : Error("valuation of zero") {}
};

// evaluation at a pole of a rational function; `where` names the point
struct PoleError : Error {
    std::string where;
    explicit PoleError(std::string w)
        : Error("pole at parameter " + w), where(std::move(w)) {}
};

struct DegenerateFibreError : Error {
    using Error::Error;
};

// a series window cancelled to zero; callers may retry at higher precision
struct PrecisionExhausted : Error {
    using Error::Error;
};

struct ResourceError : Error {
    using Error::Error;
};

struct ExtensionFieldError : Error {
    using Error::Error;
};

struct NoRationalBranchError : Error {
    using Error::Error;
};

// lambda_D queried at a rational support point; h_D treats this as 0
struct SupportPointSignal : Error {
    SupportPointSignal() : Error("support point") {}
    explicit SupportPointSignal(const std::string& msg) : Error("support point: " + msg) {}
};

struct ParseError : Error {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
};

struct InternalError : Error {
    using Error::Error;
};

}  // namespace hauteur
