#pragma once

#include <stdexcept>

namespace volterra {

/// Exponent of the substitution x^alpha, restricted to (0,1).
class AlphaParam {
public:
    explicit AlphaParam(double alpha) : alpha_(alpha) {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("AlphaParam: alpha must lie in (0,1)");
    }
    [[nodiscard]] double value() const { return alpha_; }

private:
    double alpha_;
};

/// Base of a q-series, restricted to |q| < 1.
class QParam {
public:
    explicit QParam(double q) : q_(q) {
        if (!(q > -1.0 && q < 1.0))
            throw std::invalid_argument("QParam: |q| must be < 1");
    }
    [[nodiscard]] double value() const { return q_; }

private:
    double q_;
};

/// Accumulation mode for cancellation-heavy series.
enum class Precision { Double, Extended };

/// Execution policy for the data-parallel kernels. Serial is the reference
/// implementation; Parallel runs the same loops under OpenMP and is
/// required to produce bit-identical results.
enum class Exec { Serial, Parallel };

}  // namespace volterra
