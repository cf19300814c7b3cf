#pragma once

#include <vector>

#include "volterra/extended.hpp"
#include "volterra/params.hpp"

namespace volterra {

/// P_n(z) = 1 + sum_{k=1..n} n!/(n-k)! q^{k(k+1)/2}/((q-1)...(q^k-1)) z^k,
/// held as dense coefficients a_0..a_n in increasing degree. For q in (0,1)
/// the signs alternate: sign(a_k) = (-1)^k.
struct PnPolynomial {
    int n = 0;
    std::vector<double> coeffs;

    /// Set when the coefficient dynamic range is beyond what double
    /// arithmetic resolves cleanly (n > 60, or underflowed entries).
    bool precision_warning = false;

    [[nodiscard]] double eval(double z) const;
    /// sum_k |a_k z^k|, the local scale used for residual normalization.
    [[nodiscard]] double magnitude(double z) const;
};

/// q-Pochhammer product prod_{j=1..k} (1 - q^j). Returns 1 for k = 0.
double qpoch(QParam q, int k);

/// F_q(z) = prod_{k>=1} (1 - q^k z), truncated once the geometric tail
/// bound drops below tol (relative).
double fq_product(QParam q, double z, double tol);

/// Same function through its power series
/// 1 + sum_k q^{k(k+1)/2}/((q-1)...(q^k-1)) z^k. Escalates to extended
/// precision internally when the predicted term hump would destroy the
/// requested accuracy through cancellation.
double fq_series(QParam q, double z, double tol);

/// k-th Maclaurin coefficient of F_q.
double fq_series_coeff(QParam q, int k);

/// F_alpha evaluated at alpha^{-n-1}; the k = n+1 product factor vanishes
/// identically, so the result is an exact zero up to rounding of the
/// neighbouring factors. n is the 0-based index of the identity.
double fq_root_check(AlphaParam alpha, int n);

/// Coefficients of P_n. Throws std::domain_error for n > 170 (factorial
/// overflow); sets precision_warning above n = 60.
PnPolynomial pn_coeffs(QParam q, int n);

/// Both sides of the candidate identity
/// (x^n P_{n+1}(x^{-1}))' = n x^{n-1} P_n(x^{-1}) evaluated at x.
/// Diagnostic only: the left side carries an x^{-2} term from the top
/// coefficient of P_{n+1}, so the two sides genuinely differ; nothing in
/// this library relies on the identity.
struct DerivativeIdentityProbe {
    double lhs;
    double rhs;
    double gap;
};
DerivativeIdentityProbe derivative_identity_probe(QParam q, int n, double x);

namespace detail {

/// P_n coefficients in 50-digit arithmetic; needed by the root finder for
/// parameter ranges where the double coefficients under- or overflow.
std::vector<mp50> pn_coeffs_mp(QParam q, int n);

}  // namespace detail

}  // namespace volterra
