#pragma once

#include <stdexcept>
#include <string>

namespace expmid {

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OperatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Krylov or fixed-point iteration that did not reach its tolerance.
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual(residual) {}
    double residual;
};

struct RangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace expmid
