#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ddehopf/expansion.hpp"
#include "oracles.hpp"

using namespace ddehopf;

TEST_CASE("sigmoid derivatives at the midpoint") {
    const auto d = sigmoid_derivs(0.0, 60.0);
    CHECK(d.f == 0.5);
    CHECK(d.f1 == 15.0);
    CHECK(d.f2 == 0.0);
    // a^3 * f(1-f)(1-6f+6f^2) = 216000 * 0.25 * (-0.5); the finite-difference
    // oracle confirms (see property test below).
    CHECK(d.f3 == -27000.0);
}

TEST_CASE("sigmoid saturates") {
    const auto d = sigmoid_derivs(1.0, 60.0);  // exp(-60) ~ 9e-27
    CHECK(d.f == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(d.f1) < 1e-12);
    CHECK(std::abs(d.f2) < 1e-12);
    CHECK(std::abs(d.f3) < 1e-12);
    CHECK_THROWS_AS(sigmoid_derivs(0.0, 0.0), InvalidParameter);
}

TEST_CASE("sigmoid values at the reference fixed point") {
    const double x_o = oracle::fixed_point_bisect(-0.05, 60.0);
    const auto d = sigmoid_derivs(x_o, 60.0);
    CHECK(d.f == doctest::Approx(0.29326).epsilon(1e-4));
    CHECK(d.f1 == doctest::Approx(12.437).epsilon(1e-3));
    const auto fd = oracle::fd_derivs(x_o, 60.0);
    CHECK(d.f1 == doctest::Approx(fd.f1).epsilon(1e-7));
}

TEST_CASE("analytic derivatives match central differences") {
    // Errors are measured against the derivative scale a^k/4: f'' and f'''
    // have zeros inside the sampled interval, so pointwise relative error is
    // unbounded there by construction.
    std::mt19937 gen(42);
    std::uniform_real_distribution<double> uni(-0.1, 0.1);
    const double a = 60.0;
    for (int i = 0; i < 100; ++i) {
        const double x = uni(gen);
        const auto an = sigmoid_derivs(x, a);
        const auto fd = oracle::fd_derivs(x, a);
        CHECK(std::abs(an.f1 - fd.f1) < 1e-5 * (a / 4.0));
        CHECK(std::abs(an.f2 - fd.f2) < 1e-5 * (a * a / 4.0));
        CHECK(std::abs(an.f3 - fd.f3) < 1e-5 * (a * a * a / 4.0));
    }
}

TEST_CASE("fixed point") {
    CHECK(fixed_point(0.0, 60.0) == 0.0);

    const double x_o = fixed_point(-0.05, 60.0);
    CHECK(x_o == doctest::Approx(-0.0146618706686).epsilon(1e-9));
    CHECK(x_o == doctest::Approx(oracle::fixed_point_bisect(-0.05, 60.0)).epsilon(1e-10));
    CHECK(std::abs(x_o - (-0.05) * oracle::sigmoid(x_o, 60.0)) < 1e-12);
    CHECK(oracle::sigmoid(x_o, 60.0) == doctest::Approx(0.29326).epsilon(1e-4));

    // positive gain: bracketed root in (0, gamma)
    const double xp = fixed_point(0.05, 60.0);
    CHECK(xp > 0.0);
    CHECK(std::abs(xp - 0.05 * oracle::sigmoid(xp, 60.0)) < 1e-12);
}

TEST_CASE("fixed point residual below 1e-12 across gamma in [-1, 0)") {
    for (double gamma = -1.0; gamma < 0.0; gamma += 0.037) {
        const double x = fixed_point(gamma, 60.0);
        CHECK(std::abs(x - gamma * oracle::sigmoid(x, 60.0)) < 1e-12);
    }
}

TEST_CASE("expansion coefficients at the reference operating point") {
    const ExpansionPoint p = expand(-0.05, 60.0);
    CHECK(p.eta == doctest::Approx(-0.621747698).epsilon(1e-6));
    CHECK(p.kappa == doctest::Approx(-7.7132497).epsilon(1e-6));
    CHECK(p.nu == doctest::Approx(90.8356214).epsilon(1e-6));
    // sign pattern: nu > 0 is what makes the noise shift stabilizing
    CHECK(p.eta < 0.0);
    CHECK(p.kappa < 0.0);
    CHECK(p.nu > 0.0);

    CHECK_THROWS_AS(expand(0.0, 60.0), DegenerateGain);
}

TEST_CASE("gamma_for_eta") {
    const ExpansionPoint ref = expand(-0.05, 60.0);

    SUBCASE("round trip at the reference point") {
        const double g = gamma_for_eta(ref.eta, 60.0);
        CHECK(g == doctest::Approx(-0.05).epsilon(1e-8));
        CHECK(std::abs(expand(g, 60.0).eta - ref.eta) < 1e-9);
    }

    SUBCASE("eta = -1.03 is attainable, at a larger gain than -0.05") {
        const double g = gamma_for_eta(-1.03, 60.0);
        CHECK(g == doctest::Approx(-0.102492).epsilon(1e-4));
        CHECK(std::abs(expand(g, 60.0).eta - (-1.03)) < 1e-9);
    }

    SUBCASE("identity on eta across the attainable range") {
        for (const double target : {-0.1, -0.9, -1.5, -3.0, -6.0}) {
            const double g = gamma_for_eta(target, 60.0);
            CHECK(std::abs(expand(g, 60.0).eta - target) < 1e-9);
        }
    }

    SUBCASE("rejections") {
        CHECK_THROWS_AS(gamma_for_eta(0.0, 60.0), InvalidParameter);
        CHECK_THROWS_AS(gamma_for_eta(1.0, 60.0), InvalidParameter);
        // |eta| only reaches ~15 by gamma = -1e6 (pre-build scan)
        CHECK_THROWS_AS(gamma_for_eta(-10000.0, 60.0), Unreachable);
    }
}
