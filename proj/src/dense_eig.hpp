#pragma once

#include <lapacke.h>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "volterra/errors.hpp"

namespace volterra::detail {

/// Eigenvalues of a general real dense matrix through LAPACK dgeev
/// (balancing + Hessenberg + shifted QR). Takes the matrix by value; dgeev
/// overwrites its input.
inline std::vector<std::complex<double>> dgeev_eigenvalues(Eigen::MatrixXd a) {
    const int n = static_cast<int>(a.rows());
    std::vector<double> wr(static_cast<std::size_t>(n)), wi(static_cast<std::size_t>(n));
    const int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n, wr.data(),
                                   wi.data(), nullptr, 1, nullptr, 1);
    if (info < 0) throw std::invalid_argument("dgeev: illegal argument");
    if (info > 0)
        throw SolverError("dgeev: QR iteration failed to converge (info = " +
                          std::to_string(info) + ")");
    std::vector<std::complex<double>> ev(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        ev[static_cast<std::size_t>(i)] = {wr[static_cast<std::size_t>(i)],
                                           wi[static_cast<std::size_t>(i)]};
    return ev;
}

}  // namespace volterra::detail
