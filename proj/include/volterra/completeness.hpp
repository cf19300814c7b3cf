#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "volterra/params.hpp"
#include "volterra/quadrature.hpp"

namespace volterra {

/// Partial sums of sum 1/mu_k over the Muntz exponents
/// mu_k = (1-alpha^k)/((1-alpha) alpha^k). The ratio column holds the raw
/// consecutive ratios (1/mu_{k+1})/(1/mu_k); ratio_limit is their limit,
/// which the recurrence mu_{k+1} = (mu_k+1)/alpha pins to alpha exactly.
/// A limit below 1 certifies convergence of the sum, hence
/// non-completeness of the Muntz system by the Muntz-Szasz criterion.
struct MuntzReport {
    std::vector<double> exponents;
    std::vector<double> partial_sums;
    std::vector<double> ratios;
    double ratio_limit = 0.0;
    double tail_bound = 0.0;  ///< geometric bound on the dropped tail at K
};
MuntzReport muntz_sum(AlphaParam alpha, int K);

enum class Family { F, G };

/// Distance study of a witness function against growing spans of the
/// eigenfunction families. Gram matrices come from quadrature inner
/// products, are pre-normalized to unit diagonal, and are solved through a
/// truncated SVD; precision_flag reports conditioning beyond 1e15 (results
/// past that point are rank-truncated, not silently trusted).
struct GramReport {
    int size = 0;
    double smallest_singular_value = 0.0;
    std::vector<std::pair<int, double>> distance_profile;
    bool precision_flag = false;
};

/// Family caps in double precision: N <= 16 for F, N <= 8 for G.
GramReport distance_to_span(const ScalarFn& witness, Family family, AlphaParam alpha, int N,
                            const QuadratureSpec& quad, Exec exec = Exec::Parallel);

/// Discretize V_alpha on N points, project onto the orthocomplement of the
/// sampled g_1..g_m, and return the spectral radius of the compressed
/// operator. Compressing away m adjoint eigenfunctions removes the top m
/// eigenvalues, so the estimate sits near (1-alpha) alpha^m.
double invariant_subspace_demo(AlphaParam alpha, int m, int N, Exec exec = Exec::Parallel);

}  // namespace volterra
