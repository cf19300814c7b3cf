#include "volterra/discretize.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "dense_eig.hpp"
#include "volterra/errors.hpp"

namespace volterra {

namespace {

constexpr int kDenseCap = 4096;

}  // namespace

// ---------------------------------------------------------------------------
// Grid

Grid Grid::graded(int n, double gamma) {
    if (n < 2) throw std::invalid_argument("Grid::graded: need at least 2 nodes");
    if (!(gamma >= 1.0)) throw std::invalid_argument("Grid::graded: gamma must be >= 1");
    Grid g;
    g.gamma_ = gamma;
    g.nodes_.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        g.nodes_[static_cast<std::size_t>(i - 1)] =
            std::pow(static_cast<double>(i) / n, gamma);
    g.nodes_.back() = 1.0;
    return g;
}

Grid Grid::symmetric_uniform(int n) {
    if (n < 2) throw std::invalid_argument("Grid::symmetric_uniform: need at least 2 nodes");
    Grid g;
    g.symmetric_ = true;
    g.nodes_.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        g.nodes_[static_cast<std::size_t>(i - 1)] = (i - 0.5) / n;
    return g;
}

std::vector<double> Grid::cell_weights() const {
    const std::size_t n = nodes_.size();
    std::vector<double> w(n);
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double next = (i + 1 < n) ? 0.5 * (nodes_[i] + nodes_[i + 1]) : 1.0;
        w[i] = next - prev;
        prev = next;
    }
    return w;
}

double default_grading(AlphaParam alpha) {
    const double a = alpha.value();
    return std::clamp((2.0 - 2.0 * a) / a, 1.0, 4.0);
}

// ---------------------------------------------------------------------------
// Matrix assembly

namespace {

void assemble_row(const SubstitutionMap& phi, const std::vector<double>& x, int i,
                  Eigen::MatrixXd& A) {
    const int n = static_cast<int>(x.size());
    double u = phi(x[static_cast<std::size_t>(i)]);
    if (u < -1e-12 || u > 1.0 + 1e-12)
        throw std::invalid_argument("build_matrix: phi(node) outside [0,1]");
    u = std::clamp(u, 0.0, 1.0);

    // leading cell [0, min(u, x_1)]: constant interpolant f(x_1)
    A(i, 0) += std::min(u, x[0]);
    if (u <= x[0]) return;

    int j = 0;
    while (j + 1 < n && x[static_cast<std::size_t>(j + 1)] <= u) {
        const double h = x[static_cast<std::size_t>(j + 1)] - x[static_cast<std::size_t>(j)];
        A(i, j) += 0.5 * h;
        A(i, j + 1) += 0.5 * h;
        ++j;
    }
    if (j + 1 < n && x[static_cast<std::size_t>(j)] < u) {
        const double h = x[static_cast<std::size_t>(j + 1)] - x[static_cast<std::size_t>(j)];
        const double d = u - x[static_cast<std::size_t>(j)];
        A(i, j) += d - d * d / (2.0 * h);
        A(i, j + 1) += d * d / (2.0 * h);
    }
}

}  // namespace

VMatrix build_matrix(const SubstitutionMap& phi, const Grid& grid, Exec exec) {
    const std::vector<double>& x = grid.nodes();
    const int n = grid.size();
    if (n > kDenseCap)
        throw std::invalid_argument("build_matrix: dense storage capped at N = 4096");
    for (int i = 1; i < n; ++i)
        if (!(x[static_cast<std::size_t>(i)] > x[static_cast<std::size_t>(i - 1)]))
            throw std::invalid_argument("build_matrix: nodes must be strictly increasing");

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) assemble_row(phi, x, i, A);
    } else {
        for (int i = 0; i < n; ++i) assemble_row(phi, x, i, A);
    }
    return {std::move(A), grid, phi};
}

// ---------------------------------------------------------------------------
// Spectrum

std::vector<std::complex<double>> spectrum(const VMatrix& matrix, int k) {
    const int n = static_cast<int>(matrix.entries.rows());
    if (k < 1 || k > n) throw std::invalid_argument("spectrum: need 1 <= k <= N");
    std::vector<std::complex<double>> ev = detail::dgeev_eigenvalues(matrix.entries);
    std::sort(ev.begin(), ev.end(),
              [](const auto& a, const auto& b) { return std::abs(a) > std::abs(b); });
    ev.resize(static_cast<std::size_t>(k));
    return ev;
}

double spectral_radius(const VMatrix& matrix) { return std::abs(spectrum(matrix, 1)[0]); }

std::pair<double, Eigen::VectorXd> top_eigenpair(const VMatrix& matrix, int max_iters) {
    const Eigen::MatrixXd& A = matrix.entries;
    Eigen::VectorXd v = Eigen::VectorXd::Ones(A.rows()).normalized();
    double rho = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        Eigen::VectorXd w = A * v;
        const double nw = w.norm();
        if (nw == 0.0) return {0.0, v};
        w /= nw;
        const double change = std::abs(nw - rho);
        rho = nw;
        v = std::move(w);
        if (it > 8 && change < 1e-14 * rho) break;
    }
    return {rho, v};
}

VMatrix flip_conjugate(const VMatrix& matrix) {
    if (!matrix.grid.symmetric())
        throw std::invalid_argument("flip_conjugate: grid must be symmetric under x -> 1-x");
    const Eigen::Index n = matrix.entries.rows();
    Eigen::MatrixXd B(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) B(i, j) = matrix.entries(n - 1 - i, n - 1 - j);
    return {std::move(B), matrix.grid, matrix.phi};
}

// ---------------------------------------------------------------------------
// Convergence study

ConvergenceTable convergence_study(AlphaParam alpha, const std::vector<int>& sizes, int k,
                                   Exec exec) {
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1])
            throw std::invalid_argument("convergence_study: sizes must be increasing");

    ConvergenceTable table;
    table.alpha = alpha.value();
    const double gamma = default_grading(alpha);
    for (int n : sizes) {
        const VMatrix vm = build_matrix(SubstitutionMap::power(alpha), Grid::graded(n, gamma), exec);
        const double scale = vm.entries.norm();
        std::vector<std::complex<double>> ev = spectrum(vm, k);

        ConvergenceRow row;
        row.size = n;
        int matched = 0;
        for (const auto& lambda : ev) {
            const bool artifact = std::abs(lambda.imag()) > 1e-8 * scale;
            row.artifact.push_back(artifact);
            row.moduli.push_back(std::abs(lambda));
            if (artifact) {
                row.rel_errors.push_back(std::numeric_limits<double>::quiet_NaN());
            } else {
                const double truth = eigenvalue(alpha, ++matched);
                row.rel_errors.push_back(std::abs(std::abs(lambda) - truth) / truth);
            }
        }
        table.rows.push_back(std::move(row));
    }
    for (std::size_t i = 1; i < table.rows.size(); ++i)
        if (table.rows[i].rel_errors[0] > table.rows[i - 1].rel_errors[0])
            table.top_error_monotone = false;
    return table;
}

// ---------------------------------------------------------------------------
// Binary export

namespace {

template <typename T>
void write_le(std::ofstream& out, T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    std::uint8_t bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes, bytes + sizeof(T));
    out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

}  // namespace

void export_matrix(const VMatrix& matrix, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("export_matrix: cannot open " + path.string());
    const Eigen::Index n = matrix.entries.rows();
    write_le<std::uint64_t>(out, static_cast<std::uint64_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) write_le<double>(out, matrix.entries(i, j));
    for (double node : matrix.grid.nodes()) write_le<double>(out, node);
    if (!out) throw std::runtime_error("export_matrix: write failed for " + path.string());
}

}  // namespace volterra
