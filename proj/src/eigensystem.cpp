#include "volterra/eigensystem.hpp"

#include <cmath>
#include <limits>
#include <type_traits>
#include <stdexcept>

#include "volterra/errors.hpp"

namespace volterra {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kDoubleCancellationBudget = 1e12;

void require_unit_interval(double x, const char* who) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument(std::string(who) + ": x must lie in [0,1]");
}

}  // namespace

double eigenvalue(AlphaParam alpha, int n) {
    if (n < 1) throw std::invalid_argument("eigenvalue: n must be >= 1");
    const double a = alpha.value();
    return (1.0 - a) * std::pow(a, static_cast<double>(n - 1));
}

FEigenfunction f_coeffs(AlphaParam alpha, int n) {
    if (n < 1) throw std::invalid_argument("f_coeffs: n must be >= 1");
    if (n > 171) throw std::domain_error("f_coeffs: n > 171 overflows the factorial range");
    const double a = alpha.value();
    const int m = n - 1;

    FEigenfunction f;
    f.n = n;
    f.alpha = a;
    f.lambda = eigenvalue(alpha, n);
    f.beta = a / (1.0 - a);
    f.coeffs.resize(static_cast<std::size_t>(m));
    // C_{m-k} = m!/(m-k)! alpha^{k(k-1)/2} (1-alpha)^k / ((1-alpha)...(1-alpha^k)),
    // built through the ratio  C_{m-k}/C_{m-k+1} = (m-k+1) alpha^{k-1} (1-alpha)/(1-alpha^k).
    double t = 1.0, ak = 1.0, apow = 1.0;  // apow = alpha^{k-1}
    for (int k = 1; k <= m; ++k) {
        ak *= a;  // alpha^k
        t *= static_cast<double>(m - k + 1) * apow * (1.0 - a) / (1.0 - ak);
        f.coeffs[static_cast<std::size_t>(k - 1)] = t;  // C_{m-k}
        apow *= a;
    }
    return f;
}

double f_eval(const FEigenfunction& f, double x) {
    require_unit_interval(x, "f_eval");
    if (x == 0.0) return 0.0;  // beta > 0 beats every log power
    const double L = std::log(x);
    double p = 1.0;
    for (double c : f.coeffs) p = p * L + c;
    return std::pow(x, f.beta) * p;
}

namespace {

// Term recurrence for g_{n}: with m = n-1 and term index k >= 2,
//   c_k = (-1)^{k-1} alpha^{(k-1)(k-2-2m)/2} / ((1-alpha)...(1-alpha^{k-1})),
//   c_{k+1} = -c_k alpha^{k-1-m} / (1-alpha^k),
//   mu_{k}  = (mu_{k-1} + 1)/alpha.
template <typename Real>
void g_terms_impl(double av, int m, double tol, GEigenfunction& out) {
    using std::pow;
    const Real a(av);
    Real c(1), mu(0);
    double max_term = 1.0;

    out.terms.push_back({1.0, 0.0});
    if constexpr (!std::is_same_v<Real, double>) {
        out.ext_coefficients.push_back(Real(1));
        out.ext_exponents.push_back(Real(0));
    }

    Real ak(1);  // alpha^{k-1}
    for (int k = 2;; ++k) {
        // advance c from index k-1 to k: factor -alpha^{(k-2)-m}/(1-alpha^{k-2+1})
        const int e = k - 2 - m;
        c *= -pow(a, e) / (Real(1) - ak * a);
        ak *= a;
        mu = (mu + Real(1)) / a;

        out.terms.push_back({static_cast<double>(c), static_cast<double>(mu)});
        if constexpr (!std::is_same_v<Real, double>) {
            out.ext_coefficients.push_back(c);
            out.ext_exponents.push_back(mu);
        }
        const double ac = std::abs(static_cast<double>(c));
        max_term = std::max(max_term, ac);

        // next-term ratio |c_{k+1}/c_k| = alpha^{k-1-m}/(1-alpha^k)
        const double ratio = std::pow(av, static_cast<double>(k - 1 - m)) /
                             (1.0 - std::pow(av, static_cast<double>(k)));
        if (k - 2 > 2 * m && ratio < 0.5 && ac * ratio < tol) {
            // geometric tail bound on everything dropped
            out.truncation_error_bound = ac * ratio / (1.0 - ratio);
            break;
        }
        if (k > 100000) throw std::runtime_error("g_terms: truncation index diverged");
    }
    out.max_term_magnitude = max_term;
}

}  // namespace

GEigenfunction g_terms(AlphaParam alpha, int n, double tol, Precision precision) {
    if (n < 1) throw std::invalid_argument("g_terms: n must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("g_terms: tol must be > 0");
    const double a = alpha.value();
    const int m = n - 1;

    // predicted hump: min over k of (k-1)(k-2-2m)/2 is about -(2m+1)^2/8
    const double hump_exponent = -std::pow(2.0 * m + 1.0, 2) / 8.0;
    const double predicted_ratio = std::pow(a, hump_exponent);
    if (precision == Precision::Double && predicted_ratio > kDoubleCancellationBudget)
        throw PrecisionError(
            "g_terms: predicted cancellation ratio " + std::to_string(predicted_ratio) +
            " exceeds the double-precision budget 1e12; use Precision::Extended");

    GEigenfunction g;
    g.n = n;
    g.alpha = a;
    g.lambda = eigenvalue(alpha, n);
    g.precision = precision;
    if (precision == Precision::Double)
        g_terms_impl<double>(a, m, tol, g);
    else
        g_terms_impl<mp50>(a, m, tol, g);
    return g;
}

GEval g_eval(const GEigenfunction& g, double x) {
    require_unit_interval(x, "g_eval");
    if (x == 0.0) return {1.0, 0.0};  // every non-constant term vanishes

    if (g.precision == Precision::Extended) {
        const mp50 xv(x);
        mp50 sum(0);
        for (std::size_t i = 0; i < g.ext_coefficients.size(); ++i) {
            if (i == 0)
                sum += g.ext_coefficients[i];
            else
                sum += g.ext_coefficients[i] * pow(xv, g.ext_exponents[i]);
        }
        // 50-digit rounding floor of the hump plus the truncation tail
        const double bound =
            g.truncation_error_bound + g.max_term_magnitude * 1e-45;
        return {static_cast<double>(sum), bound};
    }

    CompensatedSum sum;
    double mag = 0.0;
    for (const GTerm& t : g.terms) {
        const double term =
            (t.exponent == 0.0) ? t.coefficient : t.coefficient * std::pow(x, t.exponent);
        sum.add(term);
        mag += std::abs(term);
    }
    // per-term input rounding is a few ulp of each term; the compensated
    // sum itself contributes O(eps) of the result
    const double bound = g.truncation_error_bound + 8.0 * kEps * mag;
    return {sum.result(), bound};
}

namespace {

template <typename Real>
double s1_impl(double av, int n, double tol) {
    using std::pow;
    const Real a(av);
    // t_1 = alpha^{-n}/(1-alpha); t_{k+1} = -t_k alpha^{k-n}/(1-alpha^{k+1})
    Real t = pow(a, -n) / (Real(1) - a);
    Real sum = t;
    Real ak(a);  // alpha^k
    for (int k = 1;; ++k) {
        const Real next_den = Real(1) - ak * a;
        t *= -pow(a, k - n) / next_den;
        ak *= a;
        sum += t;
        const double at = std::abs(static_cast<double>(t));
        // the factor from t_{k+1} to t_{k+2} must already be a clean decay
        const double next_ratio = std::pow(av, static_cast<double>(k + 1 - n)) /
                                  (1.0 - std::pow(av, static_cast<double>(k + 2)));
        if (at < tol && next_ratio < 0.5) break;
        if (k > 100000) throw std::runtime_error("s1_check: truncation index diverged");
    }
    return static_cast<double>(sum);
}

}  // namespace

double s1_check(AlphaParam alpha, int n, Precision precision) {
    if (n < 0) throw std::invalid_argument("s1_check: n must be >= 0");
    const double a = alpha.value();
    // hump of alpha^{k(k-1-2n)/2} is about alpha^{-(2n+1)^2/8}
    const double predicted_ratio = std::pow(a, -std::pow(2.0 * n + 1.0, 2) / 8.0);
    if (precision == Precision::Double && predicted_ratio > kDoubleCancellationBudget)
        throw PrecisionError("s1_check: cancellation beyond double budget; use extended mode");
    if (precision == Precision::Double) return s1_impl<double>(a, n, 1e-16);
    return s1_impl<mp50>(a, n, 1e-40);
}

}  // namespace volterra
