#include "volterra/qseries.hpp"

#include <cmath>
#include <limits>
#include <type_traits>
#include <stdexcept>

namespace volterra {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_positive_tol(double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");
}

}  // namespace

double PnPolynomial::eval(double z) const {
    double p = 0.0;
    for (int k = n; k >= 0; --k) p = p * z + coeffs[static_cast<std::size_t>(k)];
    return p;
}

double PnPolynomial::magnitude(double z) const {
    double zp = 1.0, s = 0.0;
    const double az = std::abs(z);
    for (int k = 0; k <= n; ++k) {
        s += std::abs(coeffs[static_cast<std::size_t>(k)]) * zp;
        zp *= az;
    }
    return s;
}

double qpoch(QParam q, int k) {
    if (k < 0) throw std::invalid_argument("qpoch: k must be >= 0");
    const double qv = q.value();
    double p = 1.0, qj = 1.0;
    for (int j = 1; j <= k; ++j) {
        qj *= qv;
        p *= (1.0 - qj);
    }
    return p;
}

double fq_product(QParam q, double z, double tol) {
    require_positive_tol(tol);
    const double qv = q.value();
    if (z == 0.0 || qv == 0.0) return 1.0;

    const double aq = std::abs(qv);
    double product = 1.0;
    double qk = 1.0;
    for (int k = 1;; ++k) {
        qk *= qv;
        product *= (1.0 - qk * z);
        // |log of the remaining tail| <= sum_{j>k} |q|^j |z| once the next
        // factor argument is below 1/2; stop when that bound clears tol.
        const double next = std::abs(qk) * aq * std::abs(z);
        if (next <= 0.5 && 2.0 * next / (1.0 - aq) < tol) break;
        if (k > 1000000)
            throw std::runtime_error("fq_product: truncation index diverged");
    }
    return product;
}

namespace {

// Shared series loop. Terms follow t_k = t_{k-1} * q^k z / (q^k - 1).
// The double instantiation accumulates through a compensated sum.
template <typename Real>
Real fq_series_impl(double qv, double zv, double tol, double* max_term_out) {
    const Real q(qv), z(zv);
    Real term(1), qk(1), sum(1);
    CompensatedSum csum;
    csum.add(1.0);
    double max_term = 1.0;

    for (int k = 1;; ++k) {
        qk *= q;
        term *= qk * z / (qk - Real(1));
        double running;
        if constexpr (std::is_same_v<Real, double>) {
            csum.add(term);
            running = std::abs(csum.result());
        } else {
            sum += term;
            running = std::abs(static_cast<double>(sum));
        }
        const double at = std::abs(static_cast<double>(term));
        max_term = std::max(max_term, at);
        // terms shrink monotonically once |q^{k+1} z| is safely below 1
        const double next_ratio =
            std::abs(static_cast<double>(qk)) * std::abs(qv) * std::abs(zv);
        if (next_ratio < 0.5 && at < tol * std::max(1.0, running)) break;
        if (k > 1000000)
            throw std::runtime_error("fq_series: truncation index diverged");
    }
    if (max_term_out) *max_term_out = max_term;
    if constexpr (std::is_same_v<Real, double>)
        return csum.result();
    else
        return sum;
}

}  // namespace

double fq_series(QParam q, double z, double tol) {
    require_positive_tol(tol);
    const double qv = q.value();
    if (z == 0.0 || qv == 0.0) return 1.0;

    double max_term = 0.0;
    const double value = fq_series_impl<double>(qv, z, tol, &max_term);
    // The summation is compensated, but each term still carries O(k eps)
    // input rounding; once the hump towers over the result that noise
    // dominates and the sum has to be redone in wider arithmetic.
    if (max_term * kEps * 64.0 > tol * std::max(1.0, std::abs(value)))
        return static_cast<double>(fq_series_impl<mp50>(qv, z, tol * 1e-3, nullptr));
    return value;
}

double fq_series_coeff(QParam q, int k) {
    if (k < 0) throw std::invalid_argument("fq_series_coeff: k must be >= 0");
    const double qv = q.value();
    double c = 1.0, qj = 1.0;
    for (int j = 1; j <= k; ++j) {
        qj *= qv;
        c *= qj / (qj - 1.0);
    }
    return c;
}

double fq_root_check(AlphaParam alpha, int n) {
    if (n < 0) throw std::invalid_argument("fq_root_check: n must be >= 0");
    const double a = alpha.value();
    // Factors written as 1 - alpha^{k-n-1} so the k = n+1 factor is an
    // exact zero for every alpha.
    double product = 1.0;
    for (int k = 1;; ++k) {
        const double e = static_cast<double>(k - n - 1);
        product *= (1.0 - std::pow(a, e));
        const double tail = std::pow(a, e + 1.0);
        if (k > n + 1 && tail <= 0.5 && 2.0 * tail / (1.0 - a) < 1e-15) break;
    }
    return product;
}

PnPolynomial pn_coeffs(QParam q, int n) {
    if (n < 0) throw std::invalid_argument("pn_coeffs: n must be >= 0");
    if (n > 170)
        throw std::domain_error("pn_coeffs: n > 170 overflows the double factorial range");
    const double qv = q.value();
    PnPolynomial p;
    p.n = n;
    p.coeffs.resize(static_cast<std::size_t>(n) + 1);
    p.coeffs[0] = 1.0;
    double a = 1.0, qk = 1.0;
    bool underflow = false;
    for (int k = 1; k <= n; ++k) {
        qk *= qv;
        a *= static_cast<double>(n - k + 1) * qk / (qk - 1.0);
        p.coeffs[static_cast<std::size_t>(k)] = a;
        if (a == 0.0 || !std::isfinite(a)) underflow = true;
    }
    p.precision_warning = underflow || n > 60;
    return p;
}

DerivativeIdentityProbe derivative_identity_probe(QParam q, int n, double x) {
    if (n < 0) throw std::invalid_argument("derivative_identity_probe: n must be >= 0");
    if (x == 0.0) throw std::invalid_argument("derivative_identity_probe: x must be nonzero");
    const PnPolynomial top = pn_coeffs(q, n + 1);
    const PnPolynomial bot = pn_coeffs(q, n);
    // d/dx [ x^n P_{n+1}(1/x) ] = sum_k a_k (n-k) x^{n-k-1}
    double lhs = 0.0;
    for (int k = 0; k <= n + 1; ++k)
        lhs += top.coeffs[static_cast<std::size_t>(k)] * static_cast<double>(n - k) *
               std::pow(x, static_cast<double>(n - k - 1));
    double rhs = 0.0;
    for (int k = 0; k <= n; ++k)
        rhs += static_cast<double>(n) * bot.coeffs[static_cast<std::size_t>(k)] *
               std::pow(x, static_cast<double>(n - 1 - k));
    return {lhs, rhs, std::abs(lhs - rhs)};
}

namespace detail {

std::vector<mp50> pn_coeffs_mp(QParam q, int n) {
    if (n < 0) throw std::invalid_argument("pn_coeffs_mp: n must be >= 0");
    const mp50 qv(q.value());
    std::vector<mp50> a(static_cast<std::size_t>(n) + 1);
    a[0] = 1;
    mp50 qk(1);
    for (int k = 1; k <= n; ++k) {
        qk *= qv;
        a[static_cast<std::size_t>(k)] =
            a[static_cast<std::size_t>(k - 1)] * mp50(n - k + 1) * qk / (qk - 1);
    }
    return a;
}

}  // namespace detail

}  // namespace volterra
