#pragma once

#include <vector>

#include "volterra/extended.hpp"
#include "volterra/params.hpp"

namespace volterra {

// Eigenindex convention: everything here is 1-based, lambda_n =
// (1-alpha) alpha^{n-1}. Formulas that are naturally written for the
// pair (f_{m+1}, g_{m+1}) with m >= 0 are evaluated at m = n-1.

/// Eigenfunction of V_alpha:
///   f_n(x) = x^beta (ln^m x + C_{m-1} ln^{m-1} x + ... + C_0),
/// beta = alpha/(1-alpha), m = n-1. `coeffs` stores [C_{m-1},...,C_0],
/// i.e. descending log powers after the leading 1; empty for n = 1.
struct FEigenfunction {
    int n = 1;
    double alpha = 0.0;
    double lambda = 0.0;
    double beta = 0.0;
    std::vector<double> coeffs;
};

/// One term of an adjoint eigenfunction: coefficient * x^exponent.
struct GTerm {
    double coefficient;
    double exponent;
};

/// Eigenfunction of V_alpha^*:
///   g_n(x) = 1 + sum_{k>=2} c_k x^{mu_{k-1}},
/// mu_j = (1-alpha^j)/((1-alpha) alpha^j). Term magnitudes grow to a hump
/// of size ~alpha^{-(2m+1)^2/8} before the super-geometric decay kicks in;
/// the whole series then cancels down to O(1) values. `max_term_magnitude`
/// over 1 is the predicted cancellation ratio that decides whether double
/// evaluation is trustworthy.
struct GEigenfunction {
    int n = 1;
    double alpha = 0.0;
    double lambda = 0.0;
    std::vector<GTerm> terms;
    double truncation_error_bound = 0.0;
    double max_term_magnitude = 1.0;
    Precision precision = Precision::Double;

    // populated in extended mode; same length as `terms`
    std::vector<mp50> ext_coefficients;
    std::vector<mp50> ext_exponents;
};

/// Value of a truncated-series evaluation together with its error bound
/// (truncation tail plus the rounding floor of the cancellation).
struct GEval {
    double value;
    double error_bound;
};

/// lambda_n = (1-alpha) alpha^{n-1}. Rejects n < 1.
double eigenvalue(AlphaParam alpha, int n);

/// Closed-form coefficients of f_n. Throws std::domain_error for n > 171.
FEigenfunction f_coeffs(AlphaParam alpha, int n);

/// Evaluate f_n at x in [0,1]. x = 0 returns the limit 0 exactly; the log
/// polynomial is evaluated by Horner's scheme to keep the large
/// coefficients from cancelling through separate monomials.
double f_eval(const FEigenfunction& f, double x);

/// Truncated series of g_n. Terms are kept until past the magnitude hump
/// and below tol. Throws PrecisionError in Double mode when the predicted
/// cancellation ratio exceeds 1e12.
GEigenfunction g_terms(AlphaParam alpha, int n, double tol,
                       Precision precision = Precision::Double);

/// Compensated (or extended-precision) evaluation of g_n at x in [0,1].
GEval g_eval(const GEigenfunction& g, double x);

/// Partial sum of S_1 = sum_{k>=1} (-1)^{k-1} alpha^{k(k-1-2n)/2} /
/// ((1-alpha)...(1-alpha^k)), which collapses to 1 because alpha^{-n-1} is
/// a zero of F_alpha. Takes the 0-based index n (eigenindex minus one).
double s1_check(AlphaParam alpha, int n, Precision precision = Precision::Double);

}  // namespace volterra
