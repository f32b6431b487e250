#include <doctest.h>

#include <cmath>
#include <random>

#include "darksol/diagnostics.hpp"
#include "darksol/modulation.hpp"

using namespace darksol;

TEST_SUITE_BEGIN("modulation");

namespace {
const Nonlinearity kGp = Nonlinearity::gross_pitaevskii();
}

TEST_CASE("chain spec gates") {
    CHECK_THROWS_AS(ChainSpec({{1.3, 1.2}, {-30.0, 30.0}}).validate(kGp), BadOrdering);
    CHECK_THROWS_AS(ChainSpec({{1.2, 1.3}, {30.0, -30.0}}).validate(kGp), BadOrdering);
    CHECK_THROWS_AS(ChainSpec({{1.2, 1.5}, {-30.0, 30.0}}).validate(kGp), BadOrdering);
    CHECK_NOTHROW(ChainSpec({{1.2, 1.3}, {-30.0, 30.0}}).validate(kGp));
}

TEST_CASE("single-soliton chain equals a shifted profile") {
    Grid g(1024, 200.0);
    ChainSpec spec{{1.25}, {17.0}};
    HydroField chain = build_chain(spec, kGp, g);
    SolitonProfile prof(kGp, 1.25);
    HydroField single = prof.sample(g, 17.0);
    for (int j = 0; j < g.n; ++j) {
        CHECK(chain.eta[j] == single.eta[j]);
        CHECK(chain.v[j] == single.v[j]);
    }
}

TEST_CASE("chain amplitude bound for separated solitons") {
    Grid g(2048, 400.0);
    ChainSpec spec{{1.2, 1.3}, {-30.0, 30.0}};
    HydroField chain = build_chain(spec, kGp, g);
    const double xi_max = std::max(find_xi(kGp, 1.2), find_xi(kGp, 1.3));
    CHECK(chain.max_eta() <= xi_max + 1e-8);
}

TEST_CASE("chain map is Lipschitz in (c, a) with linear scaling") {
    Grid g(1024, 400.0);
    Spectral sp(g);
    ChainSpec base{{1.2, 1.3}, {-30.0, 30.0}};
    HydroField f0 = build_chain(base, kGp, g);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    double ratio_min = 1e300, ratio_max = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const double scale = std::pow(10.0, -4.0 + 2.0 * (trial % 3));
        ChainSpec pert = base;
        double delta = 0.0;
        for (int k = 0; k < 2; ++k) {
            const double dc = scale * unif(rng), da = scale * unif(rng);
            pert.speeds[k] += dc;
            pert.positions[k] += da;
            delta += std::abs(dc) + std::abs(da);
        }
        const double dist = x_norm(build_chain(pert, kGp, g) - f0, sp);
        const double ratio = dist / delta;
        ratio_min = std::min(ratio_min, ratio);
        ratio_max = std::max(ratio_max, ratio);
    }
    CHECK(ratio_max < 25.0 * ratio_min);  // a stable Lipschitz constant
    CHECK(ratio_max < 10.0);

    // linear scaling along a fixed direction
    double prev = 0.0;
    for (double scale : {1e-2, 1e-3, 1e-4}) {
        ChainSpec pert = base;
        pert.speeds[0] += scale;
        pert.positions[1] += scale;
        const double dist = x_norm(build_chain(pert, kGp, g) - f0, sp);
        if (prev > 0.0) CHECK(prev / dist == doctest::Approx(10.0).epsilon(0.05));
        prev = dist;
    }
}

TEST_CASE("decompose recovers an exact chain") {
    Grid g(2048, 400.0);
    ChainSpec spec{{1.2, 1.3}, {-30.0, 30.0}};
    HydroField chain = build_chain(spec, kGp, g);
    ModulationFit fit = decompose(chain, spec, kGp);
    for (int k = 0; k < 2; ++k) {
        CHECK(std::abs(fit.c[k] - spec.speeds[k]) < 1e-9);
        CHECK(std::abs(fit.a[k] - spec.positions[k]) < 1e-9);
    }
    CHECK(fit.eps_xnorm < 1e-8);
    CHECK(fit.residual_norm < 1e-10);
}

TEST_CASE("decompose a perturbed chain") {
    Grid g(2048, 400.0);
    Spectral sp(g);
    ChainSpec spec{{1.2, 1.3}, {-30.0, 30.0}};
    HydroField chain = build_chain(spec, kGp, g);
    std::mt19937_64 rng(29);
    HydroField noise = random_smooth_field(g, 24, 1.0, 1.0, rng);
    const double s = 1e-3 / x_norm(noise, sp);
    HydroField field = chain + s * noise;

    ModulationFit fit = decompose(field, spec, kGp);
    double total = fit.eps_xnorm;
    for (int k = 0; k < 2; ++k)
        total += std::abs(fit.c[k] - spec.speeds[k]) + std::abs(fit.a[k] - spec.positions[k]);
    CHECK(total < 0.05);          // K alpha with a generous K
    CHECK(fit.eps_xnorm < 5e-3);

    SUBCASE("basin: offset guess lands on the same fixed point") {
        ChainSpec guess = spec;
        guess.positions[0] += 1.0;
        guess.positions[1] -= 1.0;
        ModulationFit fit2 = decompose(field, guess, kGp);
        for (int k = 0; k < 2; ++k) {
            CHECK(std::abs(fit2.c[k] - fit.c[k]) < 1e-8);
            CHECK(std::abs(fit2.a[k] - fit.a[k]) < 1e-8);
        }
    }
}

TEST_CASE("translation equivariance on grid shifts") {
    Grid g(1024, 400.0);
    ChainSpec spec{{1.2, 1.3}, {-30.0, 30.0}};
    HydroField chain = build_chain(spec, kGp, g);
    const int m = 57;
    HydroField shifted(g);
    for (int j = 0; j < g.n; ++j) {
        shifted.eta[j] = chain.eta[(j - m + g.n) % g.n];
        shifted.v[j] = chain.v[(j - m + g.n) % g.n];
    }
    ModulationFit fit = decompose(shifted, spec, kGp);
    for (int k = 0; k < 2; ++k) {
        CHECK(std::abs(fit.a[k] - (spec.positions[k] + m * g.dx())) < 1e-9);
        CHECK(std::abs(fit.c[k] - spec.speeds[k]) < 1e-9);
    }
}

TEST_CASE("hopeless guesses abort with NoConvergence") {
    Grid g(512, 200.0);
    std::mt19937_64 rng(41);
    HydroField junk = random_smooth_field(g, 8, 0.5, 0.5, rng);
    ChainSpec guess{{1.2, 1.3}, {-40.0, 40.0}};
    CHECK_THROWS_AS(decompose(junk, guess, kGp), NoConvergence);
}

TEST_CASE("modulation matrix structure") {
    Grid g(2048, 400.0);
    ChainSpec spec{{1.2, 1.3}, {-30.0, 30.0}};
    HydroField chain = build_chain(spec, kGp, g);
    ModulationFit fit = decompose(chain, spec, kGp);
    ModulationMatrices mm = modulation_matrix(chain, fit, kGp);

    // parity: <d_c Q, d_x Q> vanishes per soliton
    for (int k = 0; k < 2; ++k) {
        const double off = mm.M.at(k, 2 + k);
        CHECK(std::abs(off) < 1e-8);
        // D_{k+N,k+N} = -dp/dc > 0
        const double dpdc = momentum_derivative(kGp, spec.speeds[k]);
        CHECK(mm.D.at(2 + k, 2 + k) == doctest::Approx(-dpdc).epsilon(1e-4));
        CHECK(mm.D.at(2 + k, 2 + k) > 0.0);
    }

    // H decays with separation at eps = 0
    double prev = 1e300;
    for (double L : {40.0, 60.0, 80.0}) {
        Grid gg(2048, 480.0);
        ChainSpec sp2{{1.2, 1.3}, {-L / 2, L / 2}};
        HydroField ch = build_chain(sp2, kGp, gg);
        ModulationFit f2 = decompose(ch, sp2, kGp);
        ModulationMatrices m2 = modulation_matrix(ch, f2, kGp);
        double hnorm = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) hnorm = std::max(hnorm, std::abs(m2.H.at(i, j)));
        CHECK(hnorm < prev);
        prev = hnorm;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("track warm starts and reports finite-difference rates") {
    Grid g(1024, 200.0);
    ChainSpec spec{{1.2}, {-20.0}};
    SolitonProfile prof(kGp, 1.2);
    std::vector<std::pair<double, HydroField>> snaps;
    for (double t : {0.0, 0.5, 1.0, 1.5, 2.0})
        snaps.emplace_back(t, prof.sample(g, -20.0 + 1.2 * t));
    TrackResult tr = track(snaps, spec, kGp);
    REQUIRE(!tr.aborted);
    REQUIRE(tr.points.size() == 5);
    for (std::size_t i = 1; i + 1 < tr.points.size(); ++i) {
        CHECK(std::abs(tr.a_prime[i][0] - 1.2) < 1e-6);
        CHECK(std::abs(tr.c_prime[i][0]) < 1e-6);
    }
}

TEST_SUITE_END();
