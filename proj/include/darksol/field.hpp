#pragma once

#include <vector>

#include "darksol/grid.hpp"
#include "darksol/nonlinearity.hpp"
#include "darksol/spectral.hpp"

namespace darksol {

inline constexpr double kVacuumThreshold = 1.0 - 1e-6;

/// Periodic samples of the hydrodynamical pair (eta, v). The non-vanishing
/// invariant max eta < 1 - 1e-6 is enforced by the energy-type operations.
struct HydroField {
    Grid grid;
    std::vector<double> eta;
    std::vector<double> v;

    HydroField() = default;
    explicit HydroField(const Grid& g) : grid(g), eta(g.n, 0.0), v(g.n, 0.0) {}

    double max_eta() const;
    bool finite() const;
};

HydroField operator+(const HydroField& a, const HydroField& b);
HydroField operator-(const HydroField& a, const HydroField& b);
HydroField operator*(double s, const HydroField& f);

/// L2 x L2 pairing dx * sum(a_eta b_eta + a_v b_v).
double inner_l2(const HydroField& a, const HydroField& b);
double norm_l2(const HydroField& a);

/// X-norm: sqrt(int eta^2 + int (D eta)^2 + int v^2), spectral derivative.
double x_norm(const HydroField& f, Spectral& sp);

/// E = 1/8 int (D eta)^2/(1-eta) + 1/2 int (1-eta) v^2 + 1/2 int F(1-eta).
/// Throws VacuumBreach if max eta >= 1 - 1e-6.
double energy(const HydroField& f, const Nonlinearity& nl, Spectral& sp);

/// p = 1/2 int eta v.
double momentum(const HydroField& f);

/// L2-representative of dE (integration by parts already applied):
///   G_eta = -1/4 D(D eta/(1-eta)) + (D eta)^2/(8(1-eta)^2) + 1/2 (f(1-eta) - v^2)
///   G_v   = (1-eta) v
double energy_pairing(const HydroField& f, const HydroField& eps,
                      const Nonlinearity& nl, Spectral& sp);
HydroField grad_energy(const HydroField& f, const Nonlinearity& nl, Spectral& sp);

/// grad p = (v/2, eta/2).
HydroField grad_momentum(const HydroField& f);

/// L2 representative of the second derivative of E at f applied to eps.
HydroField hessian_energy_apply(const HydroField& f, const HydroField& eps,
                                const Nonlinearity& nl, Spectral& sp);

/// Quadratic form of the second derivative of E, evaluated by direct
/// quadrature of the displayed integrand (test oracle for the apply form).
double hessian_energy_form(const HydroField& f, const HydroField& eps,
                           const Nonlinearity& nl, Spectral& sp);

void require_no_vacuum(const HydroField& f);

}  // namespace darksol
