#pragma once

#include <vector>

#include "darksol/field.hpp"
#include "darksol/profile.hpp"

namespace darksol {

enum class KineticDiscretization {
    Stencil3,      // symmetric three-point divergence form, a at half-nodes
    SpectralForm,  // D^T diag(a) D with the dense spectral derivative
};

/// Dense symmetric discretization of H_c = grad^2(E - c p)(Q_c) acting on
/// stacked (eps_eta, eps_v) samples:
///   [ L_c                -c/(2(1-eta_c)) ]
///   [ -c/(2(1-eta_c))    1-eta_c         ]
/// L_c eps = -(eps'/(4(1-eta_c)))' - V(eta_c) eps with the potential
///   V = (-c^2 eta + 2(1-eta)F + 2(1-eta)^2 f + 2(1-eta)^3 f')/(4(1-eta)^3),
/// nonlinearity arguments evaluated at 1-eta_c; V comes from the Hessian of
/// E - c p with the profile first integral inserted and is validated against
/// the finite-difference Hessian.
struct HcOperator {
    Grid grid;
    double c = 0.0;
    KineticDiscretization mode = KineticDiscretization::SpectralForm;
    std::vector<double> matrix;  // (2n)^2, column-major

    int dim() const { return 2 * grid.n; }
    void apply(const std::vector<double>& x, std::vector<double>& y) const;
    /// <A eps, eps> dx, the discrete quadratic form H_c(eps).
    double quadratic_form(const HydroField& eps) const;
    double symmetry_defect() const;
};

HcOperator assemble_hc(const SolitonProfile& profile, const Grid& grid,
                       const Nonlinearity& nl,
                       KineticDiscretization mode = KineticDiscretization::SpectralForm);

/// (c_s^2 - c^2) / (1 + c_s^2 + sqrt((1 - c_s^2)^2 + 4 c^2)).
double essential_spectrum_floor(const Nonlinearity& nl, double c);

struct EigenPair {
    double value;
    std::vector<double> vector;  // length 2n, unit euclidean norm
};

/// m smallest eigenpairs, ascending. Throws SolverFail on LAPACK failure.
std::vector<EigenPair> low_spectrum(const HcOperator& op, int m);

/// Smallest Rayleigh quotient <A eps, eps> / ||eps||_X^2 over eps orthogonal
/// in L2 x L2 to span{dx Q_c, grad p(Q_c)}; computed by folding the X-norm
/// Gram factor (diagonal in Fourier) and deflating the constraint plane.
double constrained_coercivity(const HcOperator& op, const SolitonProfile& profile,
                              const Nonlinearity& nl);

/// Direct quadrature of the quadratic form using the same discrete derivative
/// as the assembly; test oracle for the matrix.
double hc_form_direct(const HcOperator& op, const SolitonProfile& profile,
                      const Nonlinearity& nl, const HydroField& eps);

}  // namespace darksol
