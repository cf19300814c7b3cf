#pragma once

#include <stdexcept>
#include <string>

namespace volterra {

/// Requested accuracy is not reachable in the active precision mode
/// (predicted cancellation exceeds the floating-point budget).
class PrecisionError : public std::runtime_error {
public:
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

/// Adaptive quadrature could not meet the requested tolerance within
/// its subdivision budget.
class QuadratureError : public std::runtime_error {
public:
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

/// Dense eigensolver failed to converge, or a root certification failed hard.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace volterra
