#pragma once

#include <cstddef>
#include <vector>

#include "volterra/params.hpp"

namespace volterra {

enum class RootDomain { z_domain, x_domain };

/// Sorted real zeros with per-root residuals scaled by the local
/// magnitude sum of the polynomial (or log-polynomial bracket).
struct RootSet {
    RootDomain domain = RootDomain::z_domain;
    std::vector<double> values;
    std::vector<double> residuals;
    bool certified_real = false;
};

/// All n roots of P_n for q in (0,1). Companion-matrix eigenvalues in a
/// geometrically rescaled variable (the raw monic coefficients span far
/// beyond double range), then Newton-polished in 50-digit arithmetic.
/// certified_real reflects the companion imaginary parts plus polish
/// sanity (n distinct positive roots, residuals below 1e-9); failures are
/// reported through the flag, never by dropping roots.
RootSet pn_roots(QParam q, int n);

/// Zero set of f_n on [0,1]: {0} plus exp(-alpha/((1-alpha) z_j)) over the
/// roots z_j of P_{n-1} at q = alpha. Cardinality n.
RootSet f_zeros(AlphaParam alpha, int n);

/// Strict interlacing b_1 < a_1 < b_2 < ... for |b| = |a| + 1. A zero at
/// x = 0 shared by both sets is excluded from the strict comparison. Ties
/// within 1e-12 of each other count as failures.
bool check_interlace(const RootSet& a, const RootSet& b);

/// Exploratory sign-change scan of g_n (Remark-style zero counting: the
/// count is reported, not asserted). Interior zeros come from bisection on
/// a mesh of `mesh` cells graded toward x = 1; the endpoint zero g_n(1) = 0
/// is detected against the evaluation error bound and reported separately.
struct GZeroScan {
    RootSet roots;              ///< interior zeros, plus 1.0 when endpoint_zero
    std::size_t interior_count = 0;
    bool endpoint_zero = false;
    double endpoint_value = 0.0;
    double endpoint_bound = 0.0;
    int conjectured_count = 0;  ///< n, the conjectured number of zeros in [0,1]
};
GZeroScan g_zero_scan(AlphaParam alpha, int n, int mesh,
                      Precision precision = Precision::Double, Exec exec = Exec::Parallel);

}  // namespace volterra
