#pragma once

#include <random>
#include <string>
#include <vector>

#include "darksol/evolution.hpp"
#include "darksol/field.hpp"
#include "darksol/localization.hpp"
#include "darksol/modulation.hpp"

namespace darksol {

/// Per-snapshot diagnostics row.
struct DiagnosticsRecord {
    double t = 0.0;
    double E = 0.0;
    double p = 0.0;
    std::vector<double> p_tilde;
    double G = 0.0;
    double eps_xnorm = 0.0;
    std::vector<double> c;
    std::vector<double> a;
    double max_eta = 0.0;
    double residual = 0.0;
};

/// Smooth random field: Fourier modes up to max_mode with 1/(1+m^2) decay,
/// scaled so that max |eta| = eta_amp.
HydroField random_smooth_field(const Grid& g, int max_mode, double eta_amp,
                               double v_amp, std::mt19937_64& rng);

// ---------------------------------------------------------------- virial ---

/// Analytic tanh cutoff used in the virial identity; identity = chi == 1.
struct VirialCutoff {
    bool identity = false;
    double tau0 = 0.1;
    double center = 0.0;
    double speed = 0.0;  // d(center)/dt; gives the dt-chi term

    double chi(double x) const;
    double dchi(double x) const;
    double d3chi(double x) const;
};

struct VirialCheck {
    double lhs = 0.0;       // centered difference of int chi eta v over +-dt
    double rhs = 0.0;       // the flux formula
    double mismatch = 0.0;  // |lhs - rhs|
};

/// lhs by one RK4 step each way (dt = 1e-4 default); rhs =
/// int dt_chi eta v + int chi' ((1-2eta)v^2 + Ft(eta) + (3-2eta)(D eta)^2/(4(1-eta)^2))
/// + 1/2 int chi''' (eta + ln(1-eta)),  Ft(rho) = rho f(1-rho) - F(1-rho).
VirialCheck virial_identity_check(const HydroField& f, const Nonlinearity& nl,
                                  const VirialCutoff& cutoff, double dt = 1e-4);

// ----------------------------------------------------------- appendix B ---

struct CrosstermResult {
    double computed = 0.0;
    double bound = 0.0;
    bool pass = false;
};

/// || e^{-nu_a (x-a)^+} e^{-nu_b (x-b)^-} ||_{L^p} by exact piecewise
/// integration vs the bound (2/(p min nu) + b - a)^{1/p} e^{-min nu (b-a)}.
CrosstermResult crossterm_bound_check(double a, double b, double nu_a, double nu_b,
                                      double p);

/// Multivariate polynomial from the coupled class (no pure monomials).
struct CoupledPolynomial {
    int nvars = 0;
    struct Term {
        double coeff;
        std::vector<int> exps;
    };
    std::vector<Term> terms;

    static CoupledPolynomial symmetric(int k, int M);  // S^{k,M}
    static CoupledPolynomial b_preset(int M);          // sum_{k!=j} X_k^2 X_j
    static CoupledPolynomial c_preset(int M);          // sum_{k!=j} X_k^3 X_j
    static CoupledPolynomial monomial(int i, int k, int M);  // X_i^k (invalid)

    void validate() const;  // throws BadPolynomial on pure-monomial terms
    double eval(const std::vector<double>& x) const;
};

struct DecayFit {
    std::vector<double> L;
    std::vector<double> values;
    double rate = 0.0;  // fitted exponential decay rate (positive = decaying)
    bool pass = false;
};

/// L^p norm of P evaluated on translated eta-profiles with pairwise gaps L,
/// fitted decay over the given L values; pass iff rate >= 0.9 min nu.
DecayFit polynomial_crossterm_check(const Nonlinearity& nl,
                                    const std::vector<double>& speeds,
                                    const CoupledPolynomial& P, double p,
                                    const std::vector<double>& Ls);

/// Decay of || F(1 - eta_chain) - sum_k F(1 - eta_k) ||_{L1} in L.
DecayFit fexpansion_residual_decay(const Nonlinearity& nl,
                                   const std::vector<double>& speeds,
                                   const std::vector<double>& Ls);

// ----------------------------------------------------- expansion checks ---

struct ExpansionReport {
    std::vector<double> L_values;
    std::vector<double> e_residuals;      // |E(R) - sum E(Q_k)| at eps = 0
    std::vector<double> pk_residuals;     // max_k |p_k(R) - p(Q_k)| at eps = 0
    double e_rate = 0.0;
    double pk_rate = 0.0;
    std::vector<double> s_values;
    std::vector<double> taylor_remainders;  // third-order Taylor remainder of E
    double cubic_exponent = 0.0;
    double split_residual = 0.0;  // Phi-cutoff split-form residual at (L0, s0)
    double split_budget = 0.0;
    bool pass_rates = false;
    bool pass_cubic = false;
};

struct ExpansionParams {
    std::vector<double> speeds_energy{0.0, 0.0};  // filled by defaults if zero
    std::vector<double> speeds_pk{1.2, 1.3};
    std::vector<double> Ls{40.0, 60.0, 80.0};
    std::vector<double> svals{1e-2, 5e-3, 2.5e-3};
    double rate_threshold_factor = 0.5;  // vs min(nu, tau0)
    double cubic_threshold = 2.7;
    unsigned seed = 7;
};

ExpansionReport expansion_check(const Nonlinearity& nl, const ExpansionParams& prm);

// ------------------------------------------------------- report structs ---

struct MonotonicityReport {
    std::vector<double> min_increment;  // p~_k(t) - p~_k(0), k = 2..N
    double p1_max_drift = 0.0;
    double g_max_increase = 0.0;
    double gap_slack = 0.0;  // min_t (gap(t) - gap(0) - 0.9 sigma* t)
    double envelope_rate = 0.0;
    bool rate_flag = false;  // fitted rate below 0.5 tau0 sigma*
    bool pass_ptilde = false;
    bool pass_G = false;
    bool pass_gap = false;
};

MonotonicityReport monotonicity_report(const std::vector<DiagnosticsRecord>& series,
                                       double sigma_star, double tau0,
                                       double tol = 1e-6);

struct StabilityReport {
    bool ordering_ok = false;
    double sup_distance = 0.0;      // sup_t ||Q(t) - R_{c*,a(t)}||_X
    double ratio = 0.0;             // sup / (alpha0 + e^{-tau0 L0 / 2})
    double sup_rates = 0.0;         // sup_t |a'-c| + |c'|
    double alpha0 = 0.0;
    double L0 = 0.0;
};

StabilityReport stability_report(const std::vector<double>& times,
                                 const std::vector<double>& distances,
                                 const TrackResult& track, double alpha0, double L0,
                                 double tau0, bool ordered);

}  // namespace darksol
