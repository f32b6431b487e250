#include <doctest.h>

#include <cmath>
#include <random>

#include "darksol/nonlinearity.hpp"

using namespace darksol;

TEST_SUITE_BEGIN("nonlinearity");

TEST_CASE("sound speed from f'(1)") {
    CHECK(sound_speed(Nonlinearity::gross_pitaevskii()) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(sound_speed(Nonlinearity::polynomial({2.0})) == doctest::Approx(2.0).epsilon(1e-14));
    // f(rho) = rho - 1 = -(1-rho): focusing
    CHECK_THROWS_AS(sound_speed(Nonlinearity::polynomial({-1.0})), DefocusingViolated);
}

TEST_CASE("transonic constants") {
    const auto gp = transonic_constants(Nonlinearity::gross_pitaevskii());
    CHECK(gp.c_s == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(gp.k == doctest::Approx(-6.0).epsilon(1e-14));
    CHECK(gp.k_tilde == doctest::Approx(0.5).epsilon(1e-14));

    // f''(1) = 3, f'(1) = -1: the (H3) combination vanishes
    CHECK_THROWS_AS(transonic_constants(Nonlinearity::polynomial({1.0, 1.5})), H3Violated);

    // f = (1-rho) + (1-rho)^2: f''(1) = 2, k = -2
    const auto quad = transonic_constants(Nonlinearity::polynomial({1.0, 1.0}));
    CHECK(quad.k == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(quad.k_tilde == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("k_tilde * k == -3 up to round-off") {
    for (const auto& nl : {Nonlinearity::gross_pitaevskii(),
                           Nonlinearity::polynomial({1.0, 1.0}),
                           Nonlinearity::polynomial({0.7, -0.2, 0.05})}) {
        const auto mc = transonic_constants(nl);
        CHECK(mc.k_tilde * mc.k == doctest::Approx(-3.0).epsilon(1e-14));
    }
}

TEST_CASE("hypothesis report") {
    SUBCASE("GP passes everything; H1 with equality") {
        const auto nl = Nonlinearity::gross_pitaevskii();
        const auto rep = check_hypotheses(nl, 4.0);
        CHECK(rep.all_pass());
        const double cs2 = 2.0;
        for (double rho : {0.0, 0.3, 1.0, 2.5, 4.0})
            CHECK(nl.F(rho) == doctest::Approx(cs2 * (1 - rho) * (1 - rho) / 4.0).epsilon(1e-14));
    }
    SUBCASE("f = 1 - rho^2 fails H1 below rho = 1") {
        // 1 - rho^2 = 2(1-rho) - (1-rho)^2
        const auto nl = Nonlinearity::polynomial({2.0, -1.0});
        CHECK(nl.f(0.5) == doctest::Approx(1.0 - 0.25).epsilon(1e-14));
        CHECK(nl.df(1.0) == doctest::Approx(-2.0).epsilon(1e-14));
        const auto rep = check_hypotheses(nl, 4.0);
        CHECK(rep.defocusing.pass);
        CHECK(!rep.h1.pass);
        CHECK(rep.h1.violating_rho < 1.0);
    }
    SUBCASE("focusing flagged") {
        const auto rep = check_hypotheses(Nonlinearity::polynomial({-1.0}), 4.0);
        CHECK(!rep.defocusing.pass);
    }
}

TEST_CASE("primitive consistency: dF/dr = -f(r)") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unif(0.0, 2.0);
    const double h = 1e-5;
    for (const auto& nl : {Nonlinearity::gross_pitaevskii(),
                           Nonlinearity::polynomial({1.0, 1.0}),
                           Nonlinearity::polynomial({2.0, -1.0}),
                           Nonlinearity::polynomial({0.7, -0.2, 0.05})}) {
        CHECK(std::abs(nl.F(1.0)) < 1e-14);
        CHECK(std::abs(nl.f(1.0)) < 1e-14);
        for (int i = 0; i < 100; ++i) {
            const double r = unif(rng);
            const double dF = (nl.F(r + h) - nl.F(r - h)) / (2 * h);
            CHECK(std::abs(dF + nl.f(r)) < 1e-6);
        }
    }
}

TEST_CASE("derivatives of the polynomial representation") {
    const auto nl = Nonlinearity::polynomial({0.7, -0.2, 0.05});
    const double h = 1e-5;
    for (double rho : {0.2, 0.9, 1.7}) {
        CHECK(nl.df(rho) == doctest::Approx((nl.f(rho + h) - nl.f(rho - h)) / (2 * h)).epsilon(1e-8));
        CHECK(nl.d2f(rho) == doctest::Approx((nl.df(rho + h) - nl.df(rho - h)) / (2 * h)).epsilon(1e-8));
        CHECK(nl.d3f(rho) == doctest::Approx((nl.d2f(rho + h) - nl.d2f(rho - h)) / (2 * h)).epsilon(1e-8));
    }
}

TEST_SUITE_END();
