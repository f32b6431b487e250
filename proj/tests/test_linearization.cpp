#include <doctest.h>

#include <cmath>
#include <random>

#include "darksol/diagnostics.hpp"
#include "darksol/linearization.hpp"

using namespace darksol;

TEST_SUITE_BEGIN("linearization");

namespace {
const Nonlinearity kGp = Nonlinearity::gross_pitaevskii();
}

TEST_CASE("essential spectrum floor formula") {
    CHECK(essential_spectrum_floor(kGp, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(essential_spectrum_floor(kGp, std::sqrt(2.0)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(essential_spectrum_floor(kGp, 1.0) ==
          doctest::Approx(1.0 / (3.0 + std::sqrt(5.0))).epsilon(1e-14));
    // decreasing in c
    double prev = 1e300;
    for (double c : {0.1, 0.4, 0.8, 1.1, 1.3, 1.4}) {
        const double f = essential_spectrum_floor(kGp, c);
        CHECK(f < prev);
        prev = f;
    }
}

TEST_CASE("assembly invariants") {
    Grid g(512, 100.0);
    SolitonProfile prof(kGp, 1.2);
    for (auto mode : {KineticDiscretization::SpectralForm, KineticDiscretization::Stencil3}) {
        HcOperator op = assemble_hc(prof, g, kGp, mode);
        CHECK(op.symmetry_defect() < 1e-12);
        // coupling block: -c/(2(1-eta_c)) on the diagonal of the off block
        HydroField q = prof.sample(g, 0.0);
        const int n = g.n, d = 2 * n;
        for (int j = 0; j < n; j += 37) {
            const double expected = -1.2 / (2.0 * (1.0 - q.eta[j]));
            CHECK(op.matrix[static_cast<std::size_t>(n + j) * d + j] ==
                  doctest::Approx(expected).epsilon(1e-14));
            CHECK(op.matrix[static_cast<std::size_t>(n + j) * d + n + j] ==
                  doctest::Approx(1.0 - q.eta[j]).epsilon(1e-14));
        }
    }
}

TEST_CASE("quadratic form matches direct quadrature") {
    Grid g(512, 100.0);
    SolitonProfile prof(kGp, 1.2);
    std::mt19937_64 rng(17);
    for (auto mode : {KineticDiscretization::SpectralForm, KineticDiscretization::Stencil3}) {
        HcOperator op = assemble_hc(prof, g, kGp, mode);
        for (int trial = 0; trial < 20; ++trial) {
            HydroField eps = random_smooth_field(g, 20, 1.0, 1.0, rng);
            const double a = op.quadratic_form(eps);
            const double b = hc_form_direct(op, prof, kGp, eps);
            CHECK(a == doctest::Approx(b).epsilon(1e-8));
        }
    }
}

TEST_CASE("quadratic form is the second derivative of E - c p") {
    Grid g(512, 100.0);
    Spectral sp(g);
    const double c = 1.2;
    SolitonProfile prof(kGp, c);
    HydroField q = prof.sample(g, 0.0);
    HcOperator op = assemble_hc(prof, g, kGp);
    std::mt19937_64 rng(19);
    HydroField eps = random_smooth_field(g, 16, 1.0, 1.0, rng);
    const double h = 1e-4;
    auto ecp = [&](const HydroField& f) { return energy(f, kGp, sp) - c * momentum(f); };
    const double fd = (ecp(q + h * eps) - 2.0 * ecp(q) + ecp(q - h * eps)) / (h * h);
    CHECK(op.quadratic_form(eps) == doctest::Approx(fd).epsilon(1e-4));
}

TEST_CASE("kernel direction and spectral structure") {
    Grid g(512, 100.0);
    const double c = 1.2;
    SolitonProfile prof(kGp, c);
    HcOperator op = assemble_hc(prof, g, kGp);

    // A (dx Q_c) ~ 0
    const int n = g.n;
    std::vector<double> w(2 * n), Aw;
    for (int j = 0; j < n; ++j) {
        w[j] = prof.deta_at(g.node(j));
        w[n + j] = prof.dv_at(g.node(j));
    }
    op.apply(w, Aw);
    double nw = 0.0, nAw = 0.0;
    for (int i = 0; i < 2 * n; ++i) {
        nw += w[i] * w[i];
        nAw += Aw[i] * Aw[i];
    }
    CHECK(std::sqrt(nAw) < 1e-4 * std::sqrt(nw));

    auto pairs = low_spectrum(op, 6);
    // exactly one eigenvalue below -1e-6
    int negatives = 0;
    for (const auto& pr : pairs)
        if (pr.value < -1e-6) ++negatives;
    CHECK(negatives == 1);
    // vanishing direction aligned with dx Q_c
    CHECK(std::abs(pairs[1].value) < 1e-4);
    double dot = 0.0;
    for (int i = 0; i < 2 * n; ++i) dot += pairs[1].vector[i] * w[i];
    CHECK(std::abs(dot) / std::sqrt(nw) > 0.999);
    CHECK(pairs[2].value > -1e-8);

    // negative direction has an even eta-component
    double defect = 0.0, scale = 0.0;
    for (int j = 0; j < n; ++j) {
        const double a = pairs[0].vector[j];
        const double b = pairs[0].vector[(n - j) % n];
        defect = std::max(defect, std::abs(a - b));
        scale = std::max(scale, std::abs(a));
    }
    CHECK(defect < 1e-3 * scale);
}

TEST_CASE("constrained coercivity is positive and grid-stable") {
    for (double c : {1.2, 1.3, 1.39}) {
        Grid g(512, 100.0);
        SolitonProfile prof(kGp, c);
        HcOperator op = assemble_hc(prof, g, kGp);
        const double lc = constrained_coercivity(op, prof, kGp);
        CHECK(lc > 0.0);
        // without the constraints the minimum is negative
        CHECK(low_spectrum(op, 1)[0].value < 0.0);
    }
    Grid g1(256, 100.0), g2(512, 100.0);
    SolitonProfile prof(kGp, 1.2);
    const double l1 = constrained_coercivity(assemble_hc(prof, g1, kGp), prof, kGp);
    const double l2 = constrained_coercivity(assemble_hc(prof, g2, kGp), prof, kGp);
    CHECK(std::abs(l1 - l2) < 0.1 * l2);
}

TEST_SUITE_END();
