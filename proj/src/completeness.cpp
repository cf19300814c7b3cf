#include "volterra/completeness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "volterra/discretize.hpp"
#include "volterra/eigensystem.hpp"
#include "volterra/errors.hpp"

namespace volterra {

MuntzReport muntz_sum(AlphaParam alpha, int K) {
    if (K < 2) throw std::invalid_argument("muntz_sum: K must be >= 2");
    const double a = alpha.value();
    MuntzReport report;
    report.exponents.reserve(static_cast<std::size_t>(K));

    double mu = 1.0 / a;  // mu_1
    double sum = 0.0;
    for (int k = 1; k <= K; ++k) {
        report.exponents.push_back(mu);
        sum += 1.0 / mu;
        report.partial_sums.push_back(sum);
        mu = (mu + 1.0) / a;
    }
    // mu now holds mu_{K+1}
    for (int k = 0; k + 1 < K; ++k)
        report.ratios.push_back(report.exponents[static_cast<std::size_t>(k)] /
                                report.exponents[static_cast<std::size_t>(k) + 1]);
    report.ratio_limit = (report.exponents.back() + 1.0) / mu;
    report.tail_bound = (1.0 / report.exponents.back()) * a / (1.0 - a);
    return report;
}

// ---------------------------------------------------------------------------
// Distance to span

namespace {

std::vector<ScalarFn> family_members(Family family, AlphaParam alpha, int N) {
    std::vector<ScalarFn> fs;
    fs.reserve(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        if (family == Family::F) {
            fs.emplace_back(
                [fn = f_coeffs(alpha, n)](double x) { return f_eval(fn, x); });
        } else {
            fs.emplace_back(
                [gn = g_terms(alpha, n, 1e-13)](double x) { return g_eval(gn, x).value; });
        }
    }
    return fs;
}

}  // namespace

GramReport distance_to_span(const ScalarFn& witness, Family family, AlphaParam alpha, int N,
                            const QuadratureSpec& quad, Exec exec) {
    const int cap = (family == Family::F) ? 16 : 8;
    if (N < 1 || N > cap)
        throw std::invalid_argument(
            "distance_to_span: family size outside the double-precision cap");

    const std::vector<ScalarFn> fs = family_members(family, alpha, N);

    // quadrature inner products; entries are independent tasks
    Eigen::MatrixXd gram(N, N);
    Eigen::VectorXd rhs(N);
    const double witness_norm2 = inner_product(witness, witness, quad);

    struct Task {
        int i, j;  // j == -1 marks a witness inner product
    };
    std::vector<Task> tasks;
    for (int i = 0; i < N; ++i) {
        tasks.push_back({i, -1});
        for (int j = i; j < N; ++j) tasks.push_back({i, j});
    }
    const auto run = [&](const Task& t) {
        if (t.j < 0) {
            rhs(t.i) = inner_product(witness, fs[static_cast<std::size_t>(t.i)], quad);
        } else {
            const double v = inner_product(fs[static_cast<std::size_t>(t.i)],
                                           fs[static_cast<std::size_t>(t.j)], quad);
            gram(t.i, t.j) = v;
            gram(t.j, t.i) = v;
        }
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(tasks.size()); ++t)
            run(tasks[static_cast<std::size_t>(t)]);
    } else {
        for (const Task& t : tasks) run(t);
    }

    // pre-normalize to unit diagonal
    Eigen::VectorXd scale(N);
    for (int i = 0; i < N; ++i) {
        if (!(gram(i, i) > 0.0))
            throw std::runtime_error("distance_to_span: non-positive member norm");
        scale(i) = 1.0 / std::sqrt(gram(i, i));
    }
    const Eigen::MatrixXd ghat = scale.asDiagonal() * gram * scale.asDiagonal();
    const Eigen::VectorXd bhat = scale.asDiagonal() * rhs;

    GramReport report;
    report.size = N;
    for (int nn = 1; nn <= N; ++nn) {
        const Eigen::MatrixXd g = ghat.topLeftCorner(nn, nn);
        const Eigen::VectorXd b = bhat.head(nn);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const double smax = svd.singularValues()(0);
        // truncated pseudo-inverse solve
        Eigen::VectorXd c = Eigen::VectorXd::Zero(nn);
        const Eigen::VectorXd ub = svd.matrixU().transpose() * b;
        for (int i = 0; i < nn; ++i) {
            const double sv = svd.singularValues()(i);
            if (sv > nn * std::numeric_limits<double>::epsilon() * smax)
                c += (ub(i) / sv) * svd.matrixV().col(i);
        }
        // distance^2 through the full quadratic form, robust under truncation
        const double d2 =
            witness_norm2 - 2.0 * c.dot(b) + c.dot(g * c);
        report.distance_profile.emplace_back(nn, std::sqrt(std::max(d2, 0.0)));
        if (nn == N) {
            const double smin = svd.singularValues()(nn - 1);
            report.smallest_singular_value = smin;
            report.precision_flag = !(smin > 0.0) || smax / smin > 1e15;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Invariant-subspace compression

double invariant_subspace_demo(AlphaParam alpha, int m, int N, Exec exec) {
    if (m < 0) throw std::invalid_argument("invariant_subspace_demo: m must be >= 0");
    if (N < 8 || N > 4096)
        throw std::invalid_argument("invariant_subspace_demo: need 8 <= N <= 4096");

    const Grid grid = Grid::graded(N, default_grading(alpha));
    const VMatrix vm = build_matrix(SubstitutionMap::power(alpha), grid, exec);
    const std::vector<double> w = grid.cell_weights();

    // similarity-transform into the weighted space where the discrete L^2
    // inner product is the plain dot product
    Eigen::VectorXd sqw(N);
    for (int i = 0; i < N; ++i) sqw(i) = std::sqrt(w[static_cast<std::size_t>(i)]);
    Eigen::MatrixXd abar = sqw.asDiagonal() * vm.entries * sqw.cwiseInverse().asDiagonal();

    // sampled adjoint eigenfunctions, orthonormalized (two MGS passes)
    Eigen::MatrixXd qbasis(N, m);
    for (int j = 0; j < m; ++j) {
        const GEigenfunction gj = g_terms(alpha, j + 1, 1e-13);
        for (int i = 0; i < N; ++i)
            qbasis(i, j) = sqw(i) * g_eval(gj, grid.nodes()[static_cast<std::size_t>(i)]).value;
    }
    for (int pass = 0; pass < 2; ++pass)
        for (int j = 0; j < m; ++j) {
            for (int l = 0; l < j; ++l)
                qbasis.col(j) -= qbasis.col(l).dot(qbasis.col(j)) * qbasis.col(l);
            const double nrm = qbasis.col(j).norm();
            if (nrm == 0.0)
                throw std::runtime_error("invariant_subspace_demo: degenerate g sample");
            qbasis.col(j) /= nrm;
        }

    const auto project = [&](Eigen::VectorXd v) {
        for (int j = 0; j < m; ++j) v -= qbasis.col(j).dot(v) * qbasis.col(j);
        return v;
    };

    // power iteration on P Abar P
    Eigen::VectorXd v = project(Eigen::VectorXd::Ones(N));
    double nv = v.norm();
    if (nv == 0.0) return 0.0;
    v /= nv;
    double rho = 0.0;
    for (int it = 0; it < 5000; ++it) {
        Eigen::VectorXd z = project(abar * v);
        const double nz = z.norm();
        if (nz == 0.0) return 0.0;
        z /= nz;
        const double change = std::abs(nz - rho);
        rho = nz;
        v = std::move(z);
        if (it > 16 && change < 1e-12 * rho) break;
    }
    return rho;
}

}  // namespace volterra
