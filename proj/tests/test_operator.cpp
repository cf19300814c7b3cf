#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "volterra/errors.hpp"
#include "volterra/quadrature.hpp"

using namespace volterra;

namespace {

const QuadratureSpec kQuad = QuadratureSpec::defaults();

// analytic oracle: integral_0^1 x^a ln^p x dx = (-1)^p p! / (a+1)^{p+1}
double log_moment(double a, int p) {
    double fact = 1.0;
    for (int j = 2; j <= p; ++j) fact *= j;
    return ((p % 2 == 0) ? 1.0 : -1.0) * fact / std::pow(a + 1.0, p + 1);
}

}  // namespace

TEST_CASE("substitution maps and validation") {
    const AlphaParam half(0.5);
    CHECK(SubstitutionMap::power(half)(0.25) == doctest::Approx(0.5));
    CHECK(SubstitutionMap::identity()(0.7) == 0.7);
    CHECK(SubstitutionMap::flipped_power(half)(0.19) == doctest::Approx(1.0 - 0.81 * 0.81));
    CHECK(SubstitutionMap::square()(0.3) == doctest::Approx(0.09));
    CHECK(SubstitutionMap::scaled(0.5)(0.6) == doctest::Approx(0.3));
    CHECK_THROWS_AS(SubstitutionMap::scaled(0.0), std::invalid_argument);
    CHECK_THROWS_AS(SubstitutionMap::scaled(1.5), std::invalid_argument);

    const auto tbl = SubstitutionMap::table({{0.0, 0.0}, {0.5, 0.2}, {1.0, 1.0}});
    CHECK(tbl(0.25) == doctest::Approx(0.1));
    CHECK(tbl(0.0) == 0.0);
    CHECK(tbl(1.0) == 1.0);
    CHECK_THROWS_AS(SubstitutionMap::table({{0.0, 0.5}, {1.0, 0.2}}), std::invalid_argument);
    CHECK_THROWS_AS(SubstitutionMap::table({{0.1, 0.0}, {1.0, 1.0}}), std::invalid_argument);
    // endpoint images stay inside [0,1] for every builtin
    for (const auto& phi :
         {SubstitutionMap::power(half), SubstitutionMap::identity(),
          SubstitutionMap::flipped_power(half), SubstitutionMap::square(),
          SubstitutionMap::scaled(0.5)}) {
        CHECK(phi(0.0) >= 0.0);
        CHECK(phi(0.0) <= 1.0);
        CHECK(phi(1.0) >= 0.0);
        CHECK(phi(1.0) <= 1.0);
    }
}

TEST_CASE("quadrature against the analytic log-moment oracle") {
    for (double a : {0.0, 1.0 / 3.0, 0.5, 3.0})
        for (int p = 0; p <= 6; ++p) {
            const double got = integrate(
                [&](double t) { return std::pow(t, a) * std::pow(std::log(t), p); }, 0.0, 1.0,
                kQuad);
            CHECK(got == doctest::Approx(log_moment(a, p)).epsilon(1e-11).scale(1.0));
        }
}

TEST_CASE("apply_V basics") {
    const auto one = [](double) { return 1.0; };
    CHECK(apply_V(SubstitutionMap::identity(), one, 0.7, kQuad) ==
          doctest::Approx(0.7).epsilon(1e-13));
    CHECK(apply_V(SubstitutionMap::power(AlphaParam(0.5)), one, 0.5, kQuad) ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
    CHECK(apply_V(SubstitutionMap::identity(), one, 0.0, kQuad) == 0.0);
    CHECK_THROWS_AS(apply_V(SubstitutionMap::identity(), one, 1.5, kQuad),
                    std::invalid_argument);

    // antiderivative reproduction for monomials
    for (int p = 0; p <= 3; ++p)
        for (double x : {0.1, 0.5, 0.9}) {
            const double got = apply_V(
                SubstitutionMap::identity(), [&](double t) { return std::pow(t, p); }, x, kQuad);
            CHECK(got == doctest::Approx(std::pow(x, p + 1) / (p + 1)).epsilon(1e-12));
        }

    // analytic identity V f_1 = (1-alpha) f_1 for alpha = 1/2, f_1 = x
    const auto f1 = [](double t) { return t; };
    CHECK(apply_V(SubstitutionMap::power(AlphaParam(0.5)), f1, 0.25, kQuad) ==
          doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("apply_Vstar basics") {
    const AlphaParam half(0.5);
    const auto one = [](double) { return 1.0; };
    CHECK(apply_Vstar(half, one, 1.0, kQuad) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(apply_Vstar(half, one, 0.0, kQuad) == doctest::Approx(1.0).epsilon(1e-13));
    // lower limit x^{1/alpha} = x^2
    CHECK(apply_Vstar(half, one, 0.25, kQuad) == doctest::Approx(0.9375).epsilon(1e-13));
}

TEST_CASE("adjoint duality <V u, v> = <u, V* v>") {
    const auto u = [](double t) { return t * t + 0.25; };
    const auto v = [](double t) { return std::cos(3.0 * t); };
    for (double a : {0.25, 0.5, 0.75}) {
        const AlphaParam alpha(a);
        const SubstitutionMap phi = SubstitutionMap::power(alpha);
        const double lhs = inner_product(
            [&](double x) { return apply_V(phi, u, x, kQuad); }, v, kQuad);
        const double rhs = inner_product(
            u, [&](double x) { return apply_Vstar(alpha, v, x, kQuad); }, kQuad);
        const double nu = std::sqrt(inner_product(u, u, kQuad));
        const double nv = std::sqrt(inner_product(v, v, kQuad));
        CAPTURE(a);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * nu * nv);
    }
}

TEST_CASE("residual_f meets its contract") {
    CHECK(residual_f(AlphaParam(0.5), 1, kQuad, 300) < 1e-10);
    CHECK(residual_f(AlphaParam(0.25), 5, kQuad, 300) < 1e-8);
    CHECK(residual_f(AlphaParam(0.75), 10, kQuad, 300) < 1e-8);
}

TEST_CASE("residual_g meets its contract") {
    CHECK(residual_g(AlphaParam(0.5), 1, kQuad, 300) < 1e-8);
    CHECK(residual_g(AlphaParam(0.5), 4, kQuad, 300) < 1e-6);
    CHECK(residual_g(AlphaParam(0.25), 6, kQuad, 300) < 1e-6);
}

TEST_CASE("halving abs_tol never worsens residual_f") {
    for (const auto& [a, n] : {std::pair{0.5, 2}, {0.25, 3}, {0.75, 4}}) {
        QuadratureSpec quad = kQuad;
        quad.abs_tol = 1e-9;
        double prev = residual_f(AlphaParam(a), n, quad, 200);
        for (int halvings = 0; halvings < 3; ++halvings) {
            quad.abs_tol *= 0.5;
            const double cur = residual_f(AlphaParam(a), n, quad, 200);
            CAPTURE(a);
            CAPTURE(n);
            CAPTURE(quad.abs_tol);
            CHECK(cur <= prev + 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("subdivision budget failure is reported") {
    QuadratureSpec quad = kQuad;
    quad.abs_tol = 1e-13;
    const auto noisy = [](double t) { return std::sin(1e12 * t * t); };
    CHECK_THROWS_AS(integrate(noisy, 0.0, 1.0, quad), QuadratureError);
}
