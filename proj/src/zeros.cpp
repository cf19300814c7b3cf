#include "volterra/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dense_eig.hpp"
#include "volterra/eigensystem.hpp"
#include "volterra/errors.hpp"
#include "volterra/extended.hpp"
#include "volterra/qseries.hpp"

namespace volterra {

namespace {

struct MpHorner {
    mp50 value;
    mp50 derivative;
    mp50 magnitude;
};

MpHorner horner_mp(const std::vector<mp50>& coeffs, const mp50& y) {
    MpHorner h{mp50(0), mp50(0), mp50(0)};
    const mp50 ay = abs(y);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        h.derivative = h.derivative * y + h.value;
        h.value = h.value * y + *it;
        h.magnitude = h.magnitude * ay + abs(*it);
    }
    return h;
}

}  // namespace

RootSet pn_roots(QParam q, int n) {
    if (!(q.value() > 0.0 && q.value() < 1.0))
        throw std::invalid_argument("pn_roots: q must lie in (0,1)");
    if (n < 0) throw std::invalid_argument("pn_roots: n must be >= 0");

    RootSet roots;
    roots.domain = RootDomain::z_domain;
    if (n == 0) {  // P_0 = 1
        roots.certified_real = true;
        return roots;
    }

    // Exact coefficients in 50-digit arithmetic, then the substitution
    // z = s y with s = (1/|a_n|)^{1/n} so the monic coefficients of the
    // y-polynomial stay inside double range (the raw ones can reach 1e431).
    const std::vector<mp50> a = detail::pn_coeffs_mp(q, n);
    const mp50 s = exp(-log(abs(a.back())) / n);
    std::vector<mp50> b(a.size());  // b_k = a_k s^k
    mp50 sk(1);
    for (std::size_t k = 0; k < a.size(); ++k) {
        b[k] = a[k] * sk;
        sk *= s;
    }
    const std::size_t nn = static_cast<std::size_t>(n);
    std::vector<double> monic(nn);  // -b_k / b_n, the companion column
    for (std::size_t k = 0; k < nn; ++k) {
        monic[k] = static_cast<double>(b[k] / b[nn]);
        if (!std::isfinite(monic[k]))
            throw PrecisionError("pn_roots: scaled companion coefficients exceed double range");
    }

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -monic[static_cast<std::size_t>(i)];

    const std::vector<std::complex<double>> ev = detail::dgeev_eigenvalues(std::move(companion));
    bool certified = true;
    for (const auto& lambda : ev)
        if (std::abs(lambda.imag()) > 1e-9 * std::abs(lambda)) certified = false;

    // Newton polish on the exact scaled coefficients
    std::vector<double> values, residuals;
    for (const auto& lambda : ev) {
        mp50 y(lambda.real());
        for (int step = 0; step < 5; ++step) {
            const MpHorner h = horner_mp(b, y);
            if (h.derivative == 0) break;
            const mp50 dy = h.value / h.derivative;
            y -= dy;
            if (abs(dy) < mp50(1e-40) * abs(y)) break;
        }
        const MpHorner h = horner_mp(b, y);
        values.push_back(static_cast<double>(y * s));
        residuals.push_back(static_cast<double>(abs(h.value) / h.magnitude));
    }

    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    for (std::size_t i : order) {
        roots.values.push_back(values[i]);
        roots.residuals.push_back(residuals[i]);
    }

    for (std::size_t i = 0; i < roots.values.size(); ++i) {
        if (!(roots.values[i] > 0.0)) certified = false;
        if (i > 0 && !(roots.values[i] > roots.values[i - 1])) certified = false;
        if (!(roots.residuals[i] < 1e-9)) certified = false;
    }
    roots.certified_real = certified;
    return roots;
}

RootSet f_zeros(AlphaParam alpha, int n) {
    if (n < 1) throw std::invalid_argument("f_zeros: n must be >= 1");
    const double a = alpha.value();
    const RootSet zroots = pn_roots(QParam(a), n - 1);

    RootSet xroots;
    xroots.domain = RootDomain::x_domain;
    xroots.certified_real = zroots.certified_real;
    // power-factor zero at the origin, exact by convention
    xroots.values.push_back(0.0);
    xroots.residuals.push_back(0.0);

    const FEigenfunction fn = f_coeffs(alpha, n);
    const double c = a / (1.0 - a);
    for (double z : zroots.values) {
        const double x = std::exp(-c / z);  // increasing in z, so order is kept
        // residual of the log-polynomial bracket, scaled by its magnitude sum
        const double L = std::log(x);
        double p = 1.0, mag = 1.0;
        for (double coeff : fn.coeffs) {
            p = p * L + coeff;
            mag = mag * std::abs(L) + std::abs(coeff);
        }
        xroots.values.push_back(x);
        xroots.residuals.push_back(std::abs(p) / mag);
    }
    return xroots;
}

bool check_interlace(const RootSet& a, const RootSet& b) {
    if (a.domain != b.domain)
        throw std::invalid_argument("check_interlace: domains differ");
    if (b.values.size() != a.values.size() + 1)
        throw std::invalid_argument("check_interlace: need |b| = |a| + 1");

    std::size_t ia = 0, ib = 0;
    // a zero at the origin shared by both sets is excluded from the strict
    // comparison (both f_n and f_{n+1} vanish there by the power factor)
    if (!a.values.empty() && a.values.front() == 0.0 && b.values.front() == 0.0) {
        ia = ib = 1;
    }
    const double tie = 1e-12;
    std::size_t na = a.values.size(), nb = b.values.size();
    // pattern: b_1 < a_1 < b_2 < a_2 < ... < a_{n} < b_{n+1}
    while (ia < na || ib < nb) {
        if (ib < nb) {
            const double lo = b.values[ib];
            if (ia < na && !(lo < a.values[ia] - tie * std::max(1.0, std::abs(lo)))) return false;
            ++ib;
        }
        if (ia < na) {
            const double lo = a.values[ia];
            if (ib < nb && !(lo < b.values[ib] - tie * std::max(1.0, std::abs(lo)))) return false;
            ++ia;
        }
    }
    return true;
}

GZeroScan g_zero_scan(AlphaParam alpha, int n, int mesh, Precision precision, Exec exec) {
    if (n < 1) throw std::invalid_argument("g_zero_scan: n must be >= 1");
    if (mesh < 16) throw std::invalid_argument("g_zero_scan: mesh must be >= 16");
    const GEigenfunction g = g_terms(alpha, n, 1e-14, precision);

    // mesh graded quadratically toward 1, where the x^mu terms act
    const std::size_t M = static_cast<std::size_t>(mesh);
    std::vector<double> x(M + 1), v(M + 1);
    for (std::size_t i = 0; i <= M; ++i) {
        const double t = static_cast<double>(M - i) / static_cast<double>(M);
        x[i] = 1.0 - t * t;
    }
    const auto eval = [&](std::size_t i) { v[i] = g_eval(g, x[i]).value; };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i <= static_cast<std::ptrdiff_t>(M); ++i)
            eval(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i <= M; ++i) eval(i);
    }

    GZeroScan scan;
    scan.conjectured_count = n;
    scan.roots.domain = RootDomain::x_domain;
    scan.roots.certified_real = true;

    // interior sign changes, refined by bisection; the final cell touching
    // x = 1 is handled by the endpoint test below
    for (std::size_t i = 0; i + 1 <= M; ++i) {
        if (x[i + 1] >= 1.0 && i + 1 == M) break;
        if (v[i] == 0.0) {
            scan.roots.values.push_back(x[i]);
            scan.roots.residuals.push_back(0.0);
            continue;
        }
        if (v[i] * v[i + 1] < 0.0) {
            double lo = x[i], hi = x[i + 1], flo = v[i];
            for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, lo); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = g_eval(g, mid).value;
                if (fm == 0.0) { lo = hi = mid; break; }
                if (flo * fm < 0.0)
                    hi = mid;
                else {
                    lo = mid;
                    flo = fm;
                }
            }
            const double root = 0.5 * (lo + hi);
            scan.roots.values.push_back(root);
            scan.roots.residuals.push_back(std::abs(g_eval(g, root).value));
        }
    }
    scan.interior_count = scan.roots.values.size();

    const GEval at_one = g_eval(g, 1.0);
    scan.endpoint_value = at_one.value;
    scan.endpoint_bound = at_one.error_bound;
    scan.endpoint_zero = std::abs(at_one.value) <= std::max(at_one.error_bound, 1e-12);
    if (scan.endpoint_zero) {
        scan.roots.values.push_back(1.0);
        scan.roots.residuals.push_back(std::abs(at_one.value));
    }
    return scan;
}

}  // namespace volterra
