#include <doctest.h>

#include <cmath>
#include <random>

#include "darksol/diagnostics.hpp"
#include "darksol/field.hpp"
#include "darksol/modulation.hpp"
#include "darksol/profile.hpp"
#include "darksol/quadrature.hpp"

using namespace darksol;

TEST_SUITE_BEGIN("field_ops");

namespace {
const Nonlinearity kGp = Nonlinearity::gross_pitaevskii();
}

TEST_CASE("x_norm basics") {
    Grid g(512, 100.0);
    Spectral sp(g);
    HydroField zero(g);
    CHECK(x_norm(zero, sp) == 0.0);

    // v-only bump: only the L2 term of v contributes
    HydroField f(g);
    for (int j = 0; j < g.n; ++j)
        f.v[j] = std::exp(std::cos(2 * M_PI * g.node(j) / g.length) - 1.0);
    double mass = 0.0;
    for (double w : f.v) mass += w * w;
    mass *= g.dx();
    CHECK(x_norm(f, sp) == doctest::Approx(std::sqrt(mass)).epsilon(1e-13));
}

TEST_CASE("x_norm of a soliton is grid-converged") {
    double prev = 0.0;
    for (int n : {1024, 2048}) {
        Grid g(n, 200.0);
        Spectral sp(g);
        const auto pb = build_profile(kGp, 1.0, g);
        const double val = x_norm(pb.field, sp);
        if (prev != 0.0) CHECK(std::abs(val - prev) < 1e-8);
        prev = val;
    }
}

TEST_CASE("energy and momentum basics") {
    Grid g(1024, 100.0);
    Spectral sp(g);
    HydroField zero(g);
    CHECK(energy(zero, kGp, sp) == 0.0);
    CHECK(momentum(zero) == 0.0);

    std::mt19937_64 rng(3);
    HydroField f = random_smooth_field(g, 12, 0.4, 0.3, rng);
    CHECK(energy(f, kGp, sp) >= 0.0);  // (H1) makes every summand nonnegative

    HydroField neg = f;
    for (double& w : neg.v) w = -w;
    CHECK(momentum(neg) == doctest::Approx(-momentum(f)).epsilon(1e-14));

    HydroField breach(g);
    for (int j = 0; j < g.n; ++j) breach.eta[j] = 1.0 - 1e-7;
    CHECK_THROWS_AS(energy(breach, kGp, sp), VacuumBreach);
}

TEST_CASE("soliton energy self-consistent under refinement") {
    double prev = -1.0;
    for (int n : {1024, 2048, 4096}) {
        Grid g(n, 200.0);
        Spectral sp(g);
        const auto pb = build_profile(kGp, 1.0, g);
        const double e = energy(pb.field, kGp, sp);
        if (prev > 0.0) CHECK(std::abs(e - prev) < 1e-8 * e);
        prev = e;
    }
}

TEST_CASE("grid momentum matches the profile quadrature formula") {
    Grid g(2048, 200.0);
    const auto pb = build_profile(kGp, 1.0, g);
    const double p_grid = momentum(pb.field);
    const double p_quad = soliton_momentum(kGp, 1.0);
    CHECK(std::abs(p_grid - p_quad) < 1e-6 * p_quad);
    // GP closed form: arctan(nu/c) - c nu / 2
    CHECK(p_quad == doctest::Approx(std::atan(1.0) - 0.5).epsilon(1e-10));
}

TEST_CASE("trapezoid matches adaptive quadrature for a smooth decaying integrand") {
    Grid g(2048, 200.0);
    SolitonProfile prof(kGp, 1.0);
    HydroField f = prof.sample(g, 0.0);
    double s = 0.0;
    for (int j = 0; j < g.n; ++j) s += f.eta[j] * f.v[j];
    s *= g.dx();
    const double ref = integrate(
        [&](double x) { return prof.eta_at(x) * prof.v_at(x); }, -100.0, 100.0, 1e-13);
    CHECK(std::abs(s - ref) < 1e-10 * std::abs(ref));
}

TEST_CASE("momentum is invariant under circular shifts") {
    Grid g(512, 100.0);
    std::mt19937_64 rng(11);
    HydroField f = random_smooth_field(g, 10, 0.3, 0.3, rng);
    const double p0 = momentum(f);
    HydroField shifted(g);
    const int m = 137;
    for (int j = 0; j < g.n; ++j) {
        shifted.eta[j] = f.eta[(j + m) % g.n];
        shifted.v[j] = f.v[(j + m) % g.n];
    }
    CHECK(momentum(shifted) == doctest::Approx(p0).epsilon(1e-13));
}

TEST_CASE("gradient of E: Euler-Lagrange and finite differences") {
    Grid g(1024, 100.0);
    Spectral sp(g);
    const double c = 1.2;
    const auto pb = build_profile(kGp, c, g);

    SUBCASE("grad E - c grad p vanishes on the soliton") {
        HydroField ge = grad_energy(pb.field, kGp, sp);
        HydroField gp = grad_momentum(pb.field);
        HydroField el = ge - c * gp;
        CHECK(x_norm(el, sp) < 1e-5 * x_norm(pb.field, sp));
    }

    SUBCASE("directional derivatives against central differences") {
        std::mt19937_64 rng(5);
        const double h = 1e-5;
        for (int trial = 0; trial < 20; ++trial) {
            HydroField eps = random_smooth_field(g, 16, 1.0, 1.0, rng);
            HydroField G = grad_energy(pb.field, kGp, sp);
            const double fd = (energy(pb.field + h * eps, kGp, sp) -
                               energy(pb.field - h * eps, kGp, sp)) / (2 * h);
            CHECK(std::abs(fd - inner_l2(G, eps)) < 1e-6 * std::max(1.0, std::abs(fd)));
        }
    }

    SUBCASE("pairing form agrees with the L2 representative") {
        std::mt19937_64 rng(6);
        HydroField eps = random_smooth_field(g, 16, 1.0, 1.0, rng);
        const double a = energy_pairing(pb.field, eps, kGp, sp);
        const double b = inner_l2(grad_energy(pb.field, kGp, sp), eps);
        CHECK(a == doctest::Approx(b).epsilon(1e-10));
    }

    SUBCASE("zero field has zero gradient") {
        HydroField zero(g);
        HydroField gz = grad_energy(zero, kGp, sp);
        for (int j = 0; j < g.n; ++j) {
            CHECK(std::abs(gz.eta[j]) < 1e-14);
            CHECK(std::abs(gz.v[j]) < 1e-14);
        }
    }
}

TEST_CASE("hessian of E") {
    Grid g(1024, 100.0);
    Spectral sp(g);
    const auto pb = build_profile(kGp, 1.2, g);
    std::mt19937_64 rng(7);

    SUBCASE("symmetry") {
        for (int trial = 0; trial < 5; ++trial) {
            HydroField e1 = random_smooth_field(g, 16, 1.0, 1.0, rng);
            HydroField e2 = random_smooth_field(g, 16, 1.0, 1.0, rng);
            const double a = inner_l2(hessian_energy_apply(pb.field, e1, kGp, sp), e2);
            const double b = inner_l2(hessian_energy_apply(pb.field, e2, kGp, sp), e1);
            CHECK(a == doctest::Approx(b).epsilon(1e-10));
        }
    }

    SUBCASE("apply matches the displayed quadratic form") {
        HydroField e1 = random_smooth_field(g, 16, 1.0, 1.0, rng);
        const double a = inner_l2(hessian_energy_apply(pb.field, e1, kGp, sp), e1);
        const double b = hessian_energy_form(pb.field, e1, kGp, sp);
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }

    SUBCASE("finite-difference second derivative") {
        HydroField e1 = random_smooth_field(g, 16, 1.0, 1.0, rng);
        const double h = 1e-4;
        const double quad = hessian_energy_form(pb.field, e1, kGp, sp);
        const double fd = (energy(pb.field + h * e1, kGp, sp) -
                           2.0 * energy(pb.field, kGp, sp) +
                           energy(pb.field - h * e1, kGp, sp)) / (h * h);
        CHECK(std::abs(quad - fd) < 1e-4 * std::max(1.0, std::abs(quad)));
    }

    SUBCASE("at the zero field the eta-diagonal carries c_s^2/4") {
        HydroField zero(g);
        HydroField e1(g);
        for (int j = 0; j < g.n; ++j)
            e1.eta[j] = std::cos(2 * M_PI * 3 * g.node(j) / g.length);
        const double quad = hessian_energy_form(zero, e1, kGp, sp);
        std::vector<double> de;
        sp.derivative(e1.eta, de);
        double expected = 0.0;
        for (int j = 0; j < g.n; ++j)
            expected += 0.25 * de[j] * de[j] + 0.5 * e1.eta[j] * e1.eta[j];
        expected *= g.dx();  // -f'(1)/2 = 1/2 = c_s^2/4 for GP
        CHECK(quad == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("Taylor remainder of E scales cubically") {
    Grid g(2048, 400.0);
    Spectral sp(g);
    ChainSpec spec{{1.2, 1.3}, {-30.0, 30.0}};
    HydroField chain = build_chain(spec, kGp, g);
    std::mt19937_64 rng(9);
    HydroField dir = random_smooth_field(g, 20, 1.0, 1.0, rng);
    const double dn = x_norm(dir, sp);

    const double e0 = energy(chain, kGp, sp);
    double rem[2];
    const double svals[2] = {1e-2, 1e-3};
    for (int i = 0; i < 2; ++i) {
        HydroField eps = (svals[i] / dn) * dir;
        const double lin = energy_pairing(chain, eps, kGp, sp);
        const double quad = hessian_energy_form(chain, eps, kGp, sp);
        rem[i] = std::abs(energy(chain + eps, kGp, sp) - e0 - lin - 0.5 * quad);
    }
    const double exponent = std::log(rem[0] / rem[1]) / std::log(svals[0] / svals[1]);
    CHECK(exponent >= 2.7);
}

TEST_SUITE_END();
