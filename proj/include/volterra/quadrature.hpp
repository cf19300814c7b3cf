#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "volterra/eigensystem.hpp"
#include "volterra/params.hpp"

namespace volterra {

/// Monotone map of [0,1] into itself used as the substitution in
/// f -> integral_0^{phi(x)} f(t) dt.
class SubstitutionMap {
public:
    enum class Kind { Power, Identity, FlippedPower, Square, Scaled, Table };

    static SubstitutionMap power(AlphaParam alpha);
    static SubstitutionMap identity();
    /// phi(x) = 1 - (1-x)^{1/alpha}
    static SubstitutionMap flipped_power(AlphaParam alpha);
    static SubstitutionMap square();
    /// phi(x) = c x with c in (0,1]
    static SubstitutionMap scaled(double c);
    /// piecewise-linear through strictly increasing samples covering [0,1]
    static SubstitutionMap table(std::vector<std::pair<double, double>> samples);

    double operator()(double x) const;
    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] double parameter() const { return param_; }

private:
    SubstitutionMap(Kind k, double param, std::string name)
        : kind_(k), param_(param), name_(std::move(name)) {}

    Kind kind_;
    double param_ = 0.0;
    std::string name_;
    std::vector<std::pair<double, double>> samples_;
};

/// Panel layout and tolerance for the adaptive Gauss-Legendre scheme.
/// Panel breakpoints are (j/n_panels)^grading_exponent, which concentrates
/// panels at 0 where the integrands behave like t^{alpha/(1-alpha)} ln^m t.
struct QuadratureSpec {
    int panel_order = 16;
    double grading_exponent = 3.0;
    int n_panels = 64;
    double abs_tol = 1e-12;

    static QuadratureSpec defaults() { return {}; }
};

using ScalarFn = std::function<double(double)>;

/// (V_phi f)(x) = integral_0^{phi(x)} f(t) dt. The integration limit splits
/// its panel exactly. The adaptive refinement targets abs_tol but cannot go
/// below the rounding floor of the integrand's magnitude; it throws
/// QuadratureError when the subdivision budget runs out first.
double apply_V(const SubstitutionMap& phi, const ScalarFn& f, double x,
               const QuadratureSpec& quad);

/// (V_alpha^* g)(x) = integral_{x^{1/alpha}}^1 g(t) dt.
double apply_Vstar(AlphaParam alpha, const ScalarFn& g, double x,
                   const QuadratureSpec& quad);

/// integral_a^b f with the same panel/adaptivity machinery.
double integrate(const ScalarFn& f, double a, double b, const QuadratureSpec& quad);

/// L^2(0,1) inner product by quadrature.
double inner_product(const ScalarFn& u, const ScalarFn& v, const QuadratureSpec& quad);

/// Relative L^2 residual ||V_alpha f_n - lambda_n f_n|| / ||f_n|| sampled on
/// a graded mesh of `mesh` cells with trapezoid weights.
double residual_f(AlphaParam alpha, int n, const QuadratureSpec& quad, int mesh,
                  Exec exec = Exec::Parallel);

/// Same for the adjoint pair (V_alpha^*, g_n).
double residual_g(AlphaParam alpha, int n, const QuadratureSpec& quad, int mesh,
                  Exec exec = Exec::Parallel);

namespace detail {

/// Nodes and weights of the order-point Gauss-Legendre rule on [-1,1].
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int order);

}  // namespace detail

}  // namespace volterra
