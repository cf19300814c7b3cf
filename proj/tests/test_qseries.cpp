#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "volterra/qseries.hpp"

using namespace volterra;

namespace {

// independent oracle: product in 50-digit arithmetic, no shared code with
// fq_product's truncation logic
double fq_oracle(double q, double z, int terms = 400) {
    mp50 p(1), qk(1);
    for (int k = 1; k <= terms; ++k) {
        qk *= mp50(q);
        p *= (mp50(1) - qk * mp50(z));
    }
    return static_cast<double>(p);
}

}  // namespace

TEST_CASE("qpoch basic values") {
    CHECK(qpoch(QParam(0.5), 0) == 1.0);
    CHECK(qpoch(QParam(0.5), 1) == doctest::Approx(0.5).epsilon(1e-15));
    // 0.5 * 0.75 * 0.875
    CHECK(qpoch(QParam(0.5), 3) == doctest::Approx(0.328125).epsilon(1e-15));
    CHECK_THROWS_AS(qpoch(QParam(0.5), -1), std::invalid_argument);
    CHECK_THROWS_AS(QParam(1.0), std::invalid_argument);
    CHECK_THROWS_AS(QParam(-1.5), std::invalid_argument);
}

TEST_CASE("fq_product frozen values") {
    CHECK(fq_product(QParam(0.5), 0.0, 1e-13) == 1.0);
    // k=1 factor vanishes
    CHECK(fq_product(QParam(0.5), 2.0, 1e-13) == 0.0);
    // Euler-type product at q = 1/2, z = 1 (50-digit reference)
    CHECK(fq_product(QParam(0.5), 1.0, 1e-13) ==
          doctest::Approx(0.28878809508660242).epsilon(1e-12));
    CHECK_THROWS_AS(fq_product(QParam(0.5), 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("fq_series matches product and oracle") {
    CHECK(fq_series(QParam(0.5), 0.0, 1e-13) == 1.0);
    CHECK(fq_series(QParam(0.5), 1.0, 1e-13) ==
          doctest::Approx(0.28878809508660242).epsilon(1e-12));
    CHECK(std::abs(fq_series(QParam(0.5), 2.0, 1e-13)) < 1e-12);
    CHECK_THROWS_AS(fq_series(QParam(0.5), 1.0, -1e-3), std::invalid_argument);

    // agreement property over the full parameter box, including the
    // cancellation-heavy corners near |q| = 0.9, |z| = 10
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> qd(-0.9, 0.9), zd(-10.0, 10.0);
    for (int trial = 0; trial < 300; ++trial) {
        const double q = qd(rng), z = zd(rng);
        const double prod = fq_product(QParam(q), z, 1e-13);
        const double ser = fq_series(QParam(q), z, 1e-13);
        CAPTURE(q);
        CAPTURE(z);
        CHECK(std::abs(prod - ser) <= 1e-12 * (1.0 + std::abs(prod)));
        CHECK(prod == doctest::Approx(fq_oracle(q, z)).epsilon(1e-11).scale(1.0));
    }
}

TEST_CASE("product vanishes at z = q^{-m}") {
    for (double q : {0.25, 0.5, 0.75})
        for (int m = 1; m <= 8; ++m) {
            const double z = std::pow(q, -static_cast<double>(m));
            CAPTURE(q);
            CAPTURE(m);
            CHECK(std::abs(fq_product(QParam(q), z, 1e-13)) < 1e-10);
        }
}

TEST_CASE("fq_root_check is zero for every alpha and n") {
    CHECK(fq_root_check(AlphaParam(0.5), 0) == 0.0);
    CHECK(std::abs(fq_root_check(AlphaParam(0.3), 4)) < 1e-10);
    CHECK(std::abs(fq_root_check(AlphaParam(0.75), 2)) < 1e-10);
    for (double a : {0.25, 0.5, 0.75})
        for (int n = 0; n <= 8; ++n) CHECK(std::abs(fq_root_check(AlphaParam(a), n)) < 1e-10);
}

TEST_CASE("pn_coeffs frozen cases and caps") {
    const PnPolynomial p0 = pn_coeffs(QParam(0.5), 0);
    REQUIRE(p0.coeffs.size() == 1);
    CHECK(p0.coeffs[0] == 1.0);

    const PnPolynomial p1 = pn_coeffs(QParam(0.5), 1);
    REQUIRE(p1.coeffs.size() == 2);
    CHECK(p1.coeffs[0] == 1.0);
    CHECK(p1.coeffs[1] == doctest::Approx(-1.0).epsilon(1e-15));
    // the single root of 1 - z
    CHECK(p1.eval(1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(pn_coeffs(QParam(0.5), 171), std::domain_error);
    CHECK(pn_coeffs(QParam(0.5), 61).precision_warning);
    CHECK_FALSE(pn_coeffs(QParam(0.5), 30).precision_warning);
}

TEST_CASE("pn_coeffs signs alternate for q in (0,1)") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> qd(0.05, 0.95);
    for (int trial = 0; trial < 50; ++trial) {
        const double q = qd(rng);
        const int n = 1 + static_cast<int>(rng() % 30);
        const PnPolynomial p = pn_coeffs(QParam(q), n);
        CAPTURE(q);
        CAPTURE(n);
        for (int k = 1; k <= n; ++k) {
            const double a = p.coeffs[static_cast<std::size_t>(k)];
            if (a == 0.0) continue;  // underflowed corner, flagged separately
            CHECK(a * ((k % 2 == 0) ? 1.0 : -1.0) > 0.0);
        }
    }
}

TEST_CASE("P_n coefficients reproduce the F_q series coefficients") {
    // a_k / (n!/(n-k)!) equals the k-th Maclaurin coefficient of F_q
    for (double q : {0.3, 0.5, 0.7})
        for (int n : {1, 2, 5, 10, 25}) {
            const PnPolynomial p = pn_coeffs(QParam(q), n);
            double falling = 1.0;
            for (int k = 1; k <= n; ++k) {
                falling *= static_cast<double>(n - k + 1);
                const double lhs = p.coeffs[static_cast<std::size_t>(k)] / falling;
                const double rhs = fq_series_coeff(QParam(q), k);
                CAPTURE(q);
                CAPTURE(n);
                CAPTURE(k);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
            }
        }
}

TEST_CASE("extended-precision coefficients agree with double ones") {
    const PnPolynomial p = pn_coeffs(QParam(0.4), 20);
    const std::vector<mp50> mp = detail::pn_coeffs_mp(QParam(0.4), 20);
    for (std::size_t k = 0; k < p.coeffs.size(); ++k)
        CHECK(p.coeffs[k] == doctest::Approx(static_cast<double>(mp[k])).epsilon(1e-13));
}

TEST_CASE("derivative identity probe reports a genuine discrepancy") {
    // diagnostic only: the top coefficient of P_{n+1} contributes an x^{-2}
    // term to the left side, so the sides differ; nothing asserts equality
    for (double x : {0.5, 1.0, 2.0}) {
        const DerivativeIdentityProbe probe = derivative_identity_probe(QParam(0.5), 3, x);
        CHECK(std::isfinite(probe.lhs));
        CHECK(std::isfinite(probe.rhs));
        CHECK(probe.gap == std::abs(probe.lhs - probe.rhs));
    }
    CHECK(derivative_identity_probe(QParam(0.5), 3, 0.5).gap > 1e-6);
}
