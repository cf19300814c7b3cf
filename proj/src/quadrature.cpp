#include "volterra/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "volterra/errors.hpp"

namespace volterra {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

// ---------------------------------------------------------------------------
// SubstitutionMap

SubstitutionMap SubstitutionMap::power(AlphaParam alpha) {
    return {Kind::Power, alpha.value(), "power"};
}
SubstitutionMap SubstitutionMap::identity() { return {Kind::Identity, 0.0, "identity"}; }
SubstitutionMap SubstitutionMap::flipped_power(AlphaParam alpha) {
    return {Kind::FlippedPower, alpha.value(), "flipped_power"};
}
SubstitutionMap SubstitutionMap::square() { return {Kind::Square, 0.0, "square"}; }
SubstitutionMap SubstitutionMap::scaled(double c) {
    if (!(c > 0.0 && c <= 1.0))
        throw std::invalid_argument("SubstitutionMap::scaled: c must lie in (0,1]");
    return {Kind::Scaled, c, "scaled"};
}

SubstitutionMap SubstitutionMap::table(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2)
        throw std::invalid_argument("SubstitutionMap::table: need at least two samples");
    if (samples.front().first != 0.0 || samples.back().first != 1.0)
        throw std::invalid_argument("SubstitutionMap::table: abscissae must cover [0,1]");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i > 0 && !(samples[i].first > samples[i - 1].first &&
                       samples[i].second >= samples[i - 1].second))
            throw std::invalid_argument("SubstitutionMap::table: samples must be monotone");
        if (samples[i].second < 0.0 || samples[i].second > 1.0)
            throw std::invalid_argument("SubstitutionMap::table: values must lie in [0,1]");
    }
    SubstitutionMap m(Kind::Table, 0.0, "table");
    m.samples_ = std::move(samples);
    return m;
}

double SubstitutionMap::operator()(double x) const {
    switch (kind_) {
        case Kind::Power: return std::pow(x, param_);
        case Kind::Identity: return x;
        case Kind::FlippedPower: return 1.0 - std::pow(1.0 - x, 1.0 / param_);
        case Kind::Square: return x * x;
        case Kind::Scaled: return param_ * x;
        case Kind::Table: {
            auto it = std::upper_bound(samples_.begin(), samples_.end(), x,
                                       [](double v, const auto& s) { return v < s.first; });
            if (it == samples_.begin()) return samples_.front().second;
            if (it == samples_.end()) return samples_.back().second;
            const auto& [x1, y1] = *std::prev(it);
            const auto& [x2, y2] = *it;
            return y1 + (x - x1) * (y2 - y1) / (x2 - x1);
        }
    }
    return x;  // unreachable
}

// ---------------------------------------------------------------------------
// Gauss-Legendre rules

namespace detail {

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int order) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");

    std::vector<double> x(order), w(order);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration on P_order with the Chebyshev initial guess
        double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = order * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        x[i] = -z;
        x[order - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[order - 1 - i] = w[i];
    }
    return cache.emplace(order, std::make_pair(std::move(x), std::move(w))).first->second;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Adaptive panel integration

namespace {

struct SegmentSums {
    double integral = 0.0;
    double magnitude = 0.0;  // integral of |f|, used for the rounding floor
};

SegmentSums gl_segment(const ScalarFn& f, double a, double b,
                       const std::vector<double>& xs, const std::vector<double>& ws) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    SegmentSums s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double v = f(mid + half * xs[i]);
        s.integral += ws[i] * v;
        s.magnitude += ws[i] * std::abs(v);
    }
    s.integral *= half;
    s.magnitude *= half;
    return s;
}

// Bisect until the coarse/fine difference clears the tolerance or the
// rounding floor of the accumulated magnitude, whichever is larger.
double adaptive_segment(const ScalarFn& f, double a, double b, double tol, int order,
                        int* budget) {
    const auto& [xs, ws] = detail::gauss_legendre(order);
    struct Item {
        double a, b, tol;
        SegmentSums coarse;
    };
    std::vector<Item> stack;
    stack.push_back({a, b, tol, gl_segment(f, a, b, xs, ws)});
    double total = 0.0;
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        if (--(*budget) < 0)
            throw QuadratureError("adaptive quadrature exhausted its subdivision budget");
        const double mid = 0.5 * (it.a + it.b);
        const SegmentSums left = gl_segment(f, it.a, mid, xs, ws);
        const SegmentSums right = gl_segment(f, mid, it.b, xs, ws);
        const double fine = left.integral + right.integral;
        const double err = std::abs(fine - it.coarse.integral);
        const double floor = 8.0 * kEps * (left.magnitude + right.magnitude);
        if (err <= std::max(it.tol, floor) || (it.b - it.a) < 64.0 * kEps * std::abs(mid)) {
            total += fine;
        } else {
            stack.push_back({it.a, mid, 0.5 * it.tol, left});
            stack.push_back({mid, it.b, 0.5 * it.tol, right});
        }
    }
    return total;
}

// Integrate f over [lo, hi] splitting at the graded panel breakpoints
// (j/P)^gamma; lo and hi land exactly on segment boundaries.
double integrate_panels(const ScalarFn& f, double lo, double hi, const QuadratureSpec& quad) {
    if (!(quad.abs_tol > 0.0)) throw std::invalid_argument("QuadratureSpec: abs_tol must be > 0");
    if (quad.n_panels < 1 || quad.panel_order < 2)
        throw std::invalid_argument("QuadratureSpec: need n_panels >= 1, panel_order >= 2");
    if (hi <= lo) return 0.0;

    std::vector<std::pair<double, double>> segs;
    for (int j = 0; j < quad.n_panels; ++j) {
        const double t0 = std::pow(static_cast<double>(j) / quad.n_panels, quad.grading_exponent);
        const double t1 =
            std::pow(static_cast<double>(j + 1) / quad.n_panels, quad.grading_exponent);
        const double a = std::max(t0, lo), b = std::min(t1, hi);
        if (b > a) segs.emplace_back(a, b);
    }
    if (segs.empty()) segs.emplace_back(lo, hi);

    const double span = hi - lo;
    int budget = 40000;
    double total = 0.0;
    for (const auto& [a, b] : segs)
        total += adaptive_segment(f, a, b, quad.abs_tol * (b - a) / span, quad.panel_order,
                                  &budget);
    return total;
}

}  // namespace

double integrate(const ScalarFn& f, double a, double b, const QuadratureSpec& quad) {
    return integrate_panels(f, a, b, quad);
}

double apply_V(const SubstitutionMap& phi, const ScalarFn& f, double x,
               const QuadratureSpec& quad) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("apply_V: x must lie in [0,1]");
    double u = phi(x);
    if (u < -1e-12 || u > 1.0 + 1e-12)
        throw std::invalid_argument("apply_V: phi(x) outside [0,1]");
    u = std::clamp(u, 0.0, 1.0);
    return integrate_panels(f, 0.0, u, quad);
}

double apply_Vstar(AlphaParam alpha, const ScalarFn& g, double x, const QuadratureSpec& quad) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("apply_Vstar: x must lie in [0,1]");
    const double lo = std::pow(x, 1.0 / alpha.value());
    return integrate_panels(g, lo, 1.0, quad);
}

double inner_product(const ScalarFn& u, const ScalarFn& v, const QuadratureSpec& quad) {
    return integrate_panels([&](double t) { return u(t) * v(t); }, 0.0, 1.0, quad);
}

// ---------------------------------------------------------------------------
// Eigen-residuals

namespace {

// graded mesh y_i = (i/M)^gamma with trapezoid weights
std::pair<std::vector<double>, std::vector<double>> residual_mesh(int mesh, double gamma) {
    if (mesh < 8) throw std::invalid_argument("residual mesh must have at least 8 cells");
    const std::size_t M = static_cast<std::size_t>(mesh);
    std::vector<double> y(M + 1), w(M + 1);
    for (std::size_t i = 0; i <= M; ++i)
        y[i] = std::pow(static_cast<double>(i) / static_cast<double>(M), gamma);
    w[0] = 0.5 * (y[1] - y[0]);
    w[M] = 0.5 * (y[M] - y[M - 1]);
    for (std::size_t i = 1; i < M; ++i) w[i] = 0.5 * (y[i + 1] - y[i - 1]);
    return {std::move(y), std::move(w)};
}

double weighted_residual(const std::vector<double>& w, const std::vector<double>& op_vals,
                         const std::vector<double>& fn_vals, double lambda) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double r = op_vals[i] - lambda * fn_vals[i];
        num += w[i] * r * r;
        den += w[i] * fn_vals[i] * fn_vals[i];
    }
    if (den == 0.0) throw std::runtime_error("residual: zero denominator norm");
    return std::sqrt(num / den);
}

}  // namespace

double residual_f(AlphaParam alpha, int n, const QuadratureSpec& quad, int mesh, Exec exec) {
    const FEigenfunction fn = f_coeffs(alpha, n);
    const SubstitutionMap phi = SubstitutionMap::power(alpha);
    auto [y, w] = residual_mesh(mesh, quad.grading_exponent);
    const std::size_t M = y.size();
    std::vector<double> vf(M), fv(M);

    const auto body = [&](std::size_t i) {
        fv[i] = f_eval(fn, y[i]);
        vf[i] = apply_V(phi, [&](double t) { return f_eval(fn, t); }, y[i], quad);
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(M); ++i)
            body(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < M; ++i) body(i);
    }
    return weighted_residual(w, vf, fv, fn.lambda);
}

double residual_g(AlphaParam alpha, int n, const QuadratureSpec& quad, int mesh, Exec exec) {
    const GEigenfunction gn = g_terms(alpha, n, 1e-14);
    auto [y, w] = residual_mesh(mesh, quad.grading_exponent);
    const std::size_t M = y.size();
    std::vector<double> vg(M), gv(M);

    const auto body = [&](std::size_t i) {
        gv[i] = g_eval(gn, y[i]).value;
        vg[i] = apply_Vstar(alpha, [&](double t) { return g_eval(gn, t).value; }, y[i], quad);
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(M); ++i)
            body(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < M; ++i) body(i);
    }
    return weighted_residual(w, vg, gv, gn.lambda);
}

}  // namespace volterra
