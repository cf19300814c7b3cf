#pragma once

#include <cmath>

#include <boost/multiprecision/mpfr.hpp>

namespace volterra {

/// 50-decimal-digit working type for the extended-precision paths.
using mp50 = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<50>>;

/// Neumaier-compensated accumulator. Tracks the rounding error of every
/// addition and folds it back at the end, so the summation itself
/// contributes O(eps) relative to the true sum instead of O(eps) per term.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double value) {
        const double t = sum + value;
        if (std::abs(sum) >= std::abs(value))
            carry += (sum - t) + value;
        else
            carry += (value - t) + sum;
        sum = t;
    }
    [[nodiscard]] double result() const { return sum + carry; }
};

}  // namespace volterra
