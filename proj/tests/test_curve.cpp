#include <doctest.h>

#include <cmath>

#include "mkdv/curve.hpp"
#include "oracles.hpp"

using namespace mkdv;

static CurveParams fig2() { return make_curve(1.0400, 1.0392, 1.010, CurveCase::A); }

TEST_CASE("make_curve populates and cross-checks the figure-2 curve") {
    CurveParams cv = fig2();
    CHECK(cv.lambda6 == doctest::Approx(oracles::lambda6_bruteforce(1.04, 1.0392, 1.01))
                            .epsilon(1e-14));
    double closed = 1.0 + 4.0 * (1.0 / (1.04 * 1.04) + 1.0 / (1.0392 * 1.0392) +
                                 1.0 / (1.01 * 1.01));
    CHECK(std::abs(cv.lambda6 - closed) < 1e-12);
    for (int a = 0; a < 3; ++a)
        CHECK(std::abs(cv.e[2 * a] * cv.e[2 * a + 1] - 1.0) < 1e-14);
    for (int a = 0; a < 3; ++a)
        CHECK(cv.alpha[a] * cv.alpha[a] + cv.beta[a] * cv.beta[a] == doctest::Approx(1.0));
    CHECK(cv.phi_b_plus == doctest::Approx(std::asin(1.0 / 1.04)).epsilon(1e-15));
    CHECK(cv.phi_b_minus == -cv.phi_b_plus);
}

TEST_CASE("make_curve rejects bad orderings") {
    CHECK_THROWS_AS(make_curve(1.0, 1.0, 1.0, CurveCase::A), OrderingViolation);
    CHECK_THROWS_AS(make_curve(1.01, 1.04, 1.02, CurveCase::A), OrderingViolation);
    CHECK_THROWS_AS(make_curve(1.04, 1.0392, 1.01, CurveCase::B), OrderingViolation);
    CHECK_THROWS_AS(make_curve(0.9, 0.8, 0.7, CurveCase::A), OrderingViolation);
}

TEST_CASE("case B is accepted with the recorded branch-angle assignment") {
    CurveParams cv = make_curve(1.01, 1.02, 1.03, CurveCase::B);
    double arc = std::asin(1.0 / 1.01);
    CHECK(cv.phi_b_minus == doctest::Approx(arc));
    CHECK(cv.phi_b_plus == doctest::Approx(M_PI - arc));
}

TEST_CASE("ktilde values and symmetry") {
    CurveParams cv = fig2();
    CHECK(ktilde(cv, 0.0) == doctest::Approx(1.0 / (1.04 * 1.0392 * 1.01)).epsilon(1e-15));
    CHECK(ktilde(cv, cv.phi_b_plus) <= 1e-12);
    CHECK(ktilde(cv, cv.phi_b_minus) <= 1e-12);
    auto rng = oracles::make_rng(1);
    std::uniform_real_distribution<double> u(0.0, cv.phi_b_plus);
    for (int i = 0; i < 100; ++i) {
        double phi = u(rng);
        CHECK(ktilde(cv, phi) == doctest::Approx(ktilde(cv, -phi)).epsilon(1e-14));
        CHECK(ktilde(cv, phi) > 0.0);
    }
    CHECK_THROWS_AS(ktilde(cv, cv.phi_b_plus + 0.02), DomainError);
}

TEST_CASE("kprime matches the finite-difference oracle") {
    CurveParams cv = fig2();
    CHECK(kprime(cv, 0.0, +1) == doctest::Approx(0.0));
    auto rng = oracles::make_rng(2);
    std::uniform_real_distribution<double> u(-0.95 * cv.phi_b_plus, 0.95 * cv.phi_b_plus);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double phi = u(rng);
        int sheet = (i % 2) ? 1 : -1;
        double fd = oracles::kprime_fd(cv, phi, sheet);
        double kp = kprime(cv, phi, sheet);
        double scale = std::max({std::abs(fd), std::abs(kp), 1e-6});
        worst = std::max(worst, std::abs(kp - fd) / scale);
        CHECK(kprime(cv, phi, +1) == doctest::Approx(-kprime(cv, phi, -1)).epsilon(1e-14));
    }
    CHECK(worst <= 1e-6);
    CHECK_THROWS_AS(kprime(cv, cv.phi_b_plus, +1), NearBranchError);
}

TEST_CASE("branch angles against a long-double arcsine and monotonicity") {
    CurveParams cv = fig2();
    CHECK(branch_angles(cv).second ==
          doctest::Approx((double)std::asin(1.0L / 1.04L)).epsilon(1e-15));
    double prev = 10.0;
    for (double k1 : {1.01, 1.1, 2.0}) {
        CurveParams c = make_curve(k1, 1.0 + 0.5 * (k1 - 1.0), 1.0 + 0.25 * (k1 - 1.0),
                                   CurveCase::A);
        CHECK(c.phi_b_plus < prev);
        prev = c.phi_b_plus;
    }
}

TEST_CASE("curve points satisfy the angle-form curve equation") {
    CurveParams cv = fig2();
    auto rng = oracles::make_rng(3);
    std::uniform_real_distribution<double> u(-0.999 * cv.phi_b_plus, 0.999 * cv.phi_b_plus);
    for (int i = 0; i < 1000; ++i) {
        auto p = curve_point(cv, u(rng), (i % 2) ? 1 : -1);
        CHECK(curve_equation_residual(cv, p) < 1e-10);
    }
}

TEST_CASE("branch-chart factors") {
    CurveParams cv = fig2();
    CHECK(xi_branch(cv, 0.0, true) ==
          doctest::Approx(1.04 * std::cos(cv.phi_b_plus)).epsilon(1e-15));
    // Ktilde = |t| * wfactor through the series/direct switchover
    for (double t : {1e-2, 1e-3, 2e-4, 5e-5, 1e-5}) {
        for (bool upper : {true, false}) {
            double phi = upper ? cv.phi_b_plus - t * t : cv.phi_b_minus + t * t;
            CHECK(std::abs(t) * w_branch(cv, t, upper) ==
                  doctest::Approx(ktilde(cv, phi)).epsilon(1e-9));
        }
    }
}
