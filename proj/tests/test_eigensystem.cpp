#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "volterra/eigensystem.hpp"
#include "volterra/errors.hpp"
#include "volterra/qseries.hpp"

using namespace volterra;

namespace {

// test-side oracle: plain ascending term-by-term sum of g_n in 50-digit
// arithmetic straight from the closed-form coefficients
double g_oracle(double a, int n, double x, int terms = 60) {
    const int m = n - 1;
    mp50 sum(1), c(1), mu(0), ak(1);
    const mp50 av(a), xv(x);
    for (int k = 2; k <= terms; ++k) {
        c *= -pow(av, k - 2 - m) / (mp50(1) - ak * av);
        ak *= av;
        mu = (mu + 1) / av;
        if (x > 0.0) sum += c * pow(xv, mu);
    }
    return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("eigenvalue ladder") {
    CHECK(eigenvalue(AlphaParam(0.5), 1) == doctest::Approx(0.5).epsilon(1e-16));
    CHECK(eigenvalue(AlphaParam(0.5), 3) == doctest::Approx(0.125).epsilon(1e-16));
    CHECK_THROWS_AS(eigenvalue(AlphaParam(0.5), 0), std::invalid_argument);
    CHECK_THROWS_AS(AlphaParam(0.0), std::invalid_argument);
    CHECK_THROWS_AS(AlphaParam(1.0), std::invalid_argument);

    for (double a : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        const AlphaParam alpha(a);
        double sum = 0.0, prev = eigenvalue(alpha, 1);
        sum += prev;
        for (int n = 2; n <= 50; ++n) {
            const double lam = eigenvalue(alpha, n);
            CHECK(lam == doctest::Approx(a * prev).epsilon(4e-16));
            CHECK(lam < prev);
            prev = lam;
            sum += lam;
        }
        // telescoping geometric sum
        CHECK(sum == doctest::Approx(1.0 - std::pow(a, 50)).epsilon(1e-14));
    }
}

TEST_CASE("f_coeffs frozen cases") {
    const FEigenfunction f1 = f_coeffs(AlphaParam(0.5), 1);
    CHECK(f1.coeffs.empty());
    CHECK(f1.beta == doctest::Approx(1.0));
    CHECK(f1.lambda == doctest::Approx(0.5));

    // n = 2 has the single coefficient C_0 = 1 for every alpha
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> ad(0.01, 0.99);
    for (int trial = 0; trial < 20; ++trial) {
        const FEigenfunction f2 = f_coeffs(AlphaParam(ad(rng)), 2);
        REQUIRE(f2.coeffs.size() == 1);
        CHECK(f2.coeffs[0] == doctest::Approx(1.0).epsilon(1e-14));
    }

    // n = 3, alpha = 1/2: C_1 = 2, C_0 = 2/3
    const FEigenfunction f3 = f_coeffs(AlphaParam(0.5), 3);
    REQUIRE(f3.coeffs.size() == 2);
    CHECK(f3.coeffs[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(f3.coeffs[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    CHECK_THROWS_AS(f_coeffs(AlphaParam(0.5), 0), std::invalid_argument);
    CHECK_THROWS_AS(f_coeffs(AlphaParam(0.5), 172), std::domain_error);
}

TEST_CASE("f_eval special points and continuity") {
    const FEigenfunction f1 = f_coeffs(AlphaParam(0.5), 1);
    CHECK(f_eval(f1, 1.0) == 1.0);
    CHECK(f_eval(f1, 0.0) == 0.0);
    CHECK_THROWS_AS(f_eval(f1, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(f_eval(f1, 1.1), std::invalid_argument);

    // f_2(e^{-1}) = 0 for every alpha: the bracket is ln x + 1
    for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const FEigenfunction f2 = f_coeffs(AlphaParam(a), 2);
        CHECK(std::abs(f_eval(f2, std::exp(-1.0))) < 1e-15);
    }

    for (int n : {1, 4, 9}) {
        const FEigenfunction fn = f_coeffs(AlphaParam(0.25), n);
        CHECK(f_eval(fn, 0.0) == 0.0);
        // continuity near both endpoints on shrinking meshes
        for (double x0 : {0.0, 1.0}) {
            double prev_gap = 1e300;
            for (int k = 4; k <= 14; k += 2) {
                const double h = std::pow(2.0, -k);
                const double x = (x0 == 0.0) ? h : 1.0 - h;
                const double gap = std::abs(f_eval(fn, x) - f_eval(fn, x0));
                CHECK(gap <= prev_gap + 1e-12);
                prev_gap = gap;
            }
            CHECK(prev_gap < 1e-2);
        }
    }
}

TEST_CASE("g_terms structure and frozen cases") {
    // alpha = 1/2, n = 1: second term is -2 x^2
    const GEigenfunction g1 = g_terms(AlphaParam(0.5), 1, 1e-14);
    REQUIRE(g1.terms.size() >= 3);
    CHECK(g1.terms[0].coefficient == 1.0);
    CHECK(g1.terms[0].exponent == 0.0);
    CHECK(g1.terms[1].coefficient == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(g1.terms[1].exponent == doctest::Approx(2.0).epsilon(1e-15));

    // mu ladder for alpha = 1/2 is 0, 2, 6, 14, 30, ...
    for (std::size_t k = 1; k < std::min<std::size_t>(g1.terms.size(), 6); ++k)
        CHECK(g1.terms[k].exponent ==
              doctest::Approx(std::pow(2.0, static_cast<double>(k) + 1) - 2.0).epsilon(1e-14));

    for (double a : {0.25, 0.5, 0.75})
        for (int n : {1, 3, 5}) {
            const GEigenfunction g = g_terms(AlphaParam(a), n, 1e-14);
            CHECK(g.terms[0].coefficient == 1.0);
            for (std::size_t k = 1; k + 1 < g.terms.size(); ++k) {
                // exponents strictly increase and obey mu' = (mu+1)/alpha
                CHECK(g.terms[k + 1].exponent > g.terms[k].exponent);
                CHECK(g.terms[k + 1].exponent ==
                      doctest::Approx((g.terms[k].exponent + 1.0) / a).epsilon(1e-12));
                // signs alternate from term 2 onward
                if (k >= 1)
                    CHECK(g.terms[k].coefficient * g.terms[k + 1].coefficient < 0.0);
            }
        }
}

TEST_CASE("g precision refusal and extended mode") {
    // alpha = 0.25, n = 8 predicts a ~1e17 cancellation ratio
    CHECK_THROWS_AS(g_terms(AlphaParam(0.25), 8, 1e-14), PrecisionError);
    const GEigenfunction g8 = g_terms(AlphaParam(0.25), 8, 1e-14, Precision::Extended);
    CHECK(g8.precision == Precision::Extended);
    CHECK(g8.max_term_magnitude > 1e12);
    const GEval at_one = g_eval(g8, 1.0);
    CHECK(std::abs(at_one.value) <= at_one.error_bound);
    CHECK(at_one.error_bound < 1e-6);
}

TEST_CASE("g_eval endpoints, oracle value, and g(1) = 0") {
    const GEigenfunction g1 = g_terms(AlphaParam(0.5), 1, 1e-14);
    CHECK(g_eval(g1, 0.0).value == 1.0);
    CHECK_THROWS_AS(g_eval(g1, 1.5), std::invalid_argument);

    // frozen 50-digit reference for g_1(1/2) at alpha = 1/2
    CHECK(g_eval(g1, 0.5).value == doctest::Approx(0.52081008189254337).epsilon(1e-13));
    // cross-check against the independent extended-precision summation
    for (double a : {0.25, 0.5, 0.75})
        for (int n : {1, 2, 4})
            for (double x : {0.1, 0.5, 0.9, 1.0}) {
                const GEigenfunction g = g_terms(AlphaParam(a), n, 1e-14);
                const GEval got = g_eval(g, x);
                CHECK(got.value ==
                      doctest::Approx(g_oracle(a, n, x)).epsilon(1e-10).scale(1.0));
            }

    // g_n(1) = 0 within the reported bound, extended mode where double refuses
    for (double a : {0.25, 0.5, 0.75})
        for (int n = 1; n <= 8; ++n) {
            const double ratio = std::pow(a, -std::pow(2.0 * (n - 1) + 1.0, 2) / 8.0);
            const Precision prec = ratio > 1e12 ? Precision::Extended : Precision::Double;
            const GEigenfunction g = g_terms(AlphaParam(a), n, 1e-14, prec);
            const GEval at_one = g_eval(g, 1.0);
            CAPTURE(a);
            CAPTURE(n);
            CHECK(std::abs(at_one.value) <= at_one.error_bound);
        }
}

TEST_CASE("s1_check equals 1 and matches the F_alpha rearrangement") {
    CHECK(s1_check(AlphaParam(0.5), 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s1_check(AlphaParam(0.25), 3) == doctest::Approx(1.0).epsilon(1e-9));
    for (double a : {0.25, 0.5, 0.75})
        for (int n = 0; n <= 5; ++n) {
            const double s1 = s1_check(AlphaParam(a), n);
            CHECK(std::abs(s1 - 1.0) < 1e-9);
            // S1 = -(F_alpha(alpha^{-n-1}) - 1)
            CHECK(s1 == doctest::Approx(-(fq_root_check(AlphaParam(a), n) - 1.0))
                            .epsilon(1e-9));
        }
    CHECK_THROWS_AS(s1_check(AlphaParam(0.25), 9), PrecisionError);
    CHECK(s1_check(AlphaParam(0.25), 9, Precision::Extended) ==
          doctest::Approx(1.0).epsilon(1e-9));
}
