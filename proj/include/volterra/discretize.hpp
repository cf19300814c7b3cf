#pragma once

#include <complex>
#include <filesystem>
#include <vector>

#include <Eigen/Dense>

#include "volterra/params.hpp"
#include "volterra/quadrature.hpp"

namespace volterra {

/// Collocation nodes in (0,1]. The graded constructor places nodes at
/// (i/N)^gamma so the last node is exactly 1; the symmetric constructor
/// places midpoints (i-1/2)/N, which map onto themselves under x -> 1-x
/// as required by flip conjugation.
class Grid {
public:
    static Grid graded(int n, double gamma);
    static Grid symmetric_uniform(int n);

    [[nodiscard]] const std::vector<double>& nodes() const { return nodes_; }
    [[nodiscard]] int size() const { return static_cast<int>(nodes_.size()); }
    [[nodiscard]] double grading() const { return gamma_; }
    [[nodiscard]] bool symmetric() const { return symmetric_; }

    /// Cell measures around each node (midpoint-rule weights); sums to 1.
    [[nodiscard]] std::vector<double> cell_weights() const;

private:
    Grid() = default;
    std::vector<double> nodes_;
    double gamma_ = 1.0;
    bool symmetric_ = false;
};

/// Dense collocation matrix: row i holds the weights of exact integration
/// of the piecewise-linear interpolant over [0, phi(x_i)]. On [0, x_1] the
/// interpolant is the constant f(x_1), which keeps the matrix lower
/// triangular whenever phi(x) <= x.
struct VMatrix {
    Eigen::MatrixXd entries;
    Grid grid;
    SubstitutionMap phi;
};

/// Heuristic mesh grading for the x^{alpha/(1-alpha)} eigenfunction
/// singularity: clamp((2-2*alpha)/alpha, 1, 4).
double default_grading(AlphaParam alpha);

/// Assemble the collocation matrix. Rows are independent; the parallel
/// path must produce bit-identical entries to the serial one.
VMatrix build_matrix(const SubstitutionMap& phi, const Grid& grid,
                     Exec exec = Exec::Parallel);

/// k largest-modulus eigenvalues, sorted by decreasing modulus. Delegates
/// to LAPACK dgeev (balanced Hessenberg + shifted QR), which meets the
/// backward-error contract c*N*eps*||A||; non-convergence throws.
std::vector<std::complex<double>> spectrum(const VMatrix& matrix, int k);

/// Modulus of the largest eigenvalue.
double spectral_radius(const VMatrix& matrix);

/// Top eigenvalue and eigenvector by power iteration in the weighted
/// discrete L^2 norm.
std::pair<double, Eigen::VectorXd> top_eigenpair(const VMatrix& matrix, int max_iters = 500);

/// Reverse-permutation conjugation U^{-1} A U with (Uf)(x) = f(1-x).
/// Requires a symmetric grid; an exact involution and exact similarity.
VMatrix flip_conjugate(const VMatrix& matrix);

struct ConvergenceRow {
    int size = 0;
    std::vector<double> moduli;      ///< top-k computed moduli
    std::vector<double> rel_errors;  ///< against (1-alpha) alpha^{n-1}
    std::vector<bool> artifact;      ///< complex pair beyond 1e-8 * ||A||
};

struct ConvergenceTable {
    double alpha = 0.0;
    std::vector<ConvergenceRow> rows;
    bool top_error_monotone = true;  ///< flagged false when top errors grow with N
};

/// Ladder-recovery study across grid sizes.
ConvergenceTable convergence_study(AlphaParam alpha, const std::vector<int>& sizes, int k,
                                   Exec exec = Exec::Parallel);

/// Binary export: u64 little-endian N, then N*N f64 LE entries in row-major
/// order, then the N grid nodes as f64 LE.
void export_matrix(const VMatrix& matrix, const std::filesystem::path& path);

}  // namespace volterra
