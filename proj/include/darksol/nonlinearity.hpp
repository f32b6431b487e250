#pragma once

#include <string>
#include <vector>

#include "darksol/errors.hpp"

namespace darksol {

enum class NonlinearityKind { GrossPitaevskii, PolynomialInOneMinusRho };

/// Nonlinearity f of the defocusing NLS, represented as a polynomial in
/// (1-rho): f(rho) = sum_j b_j (1-rho)^j with j >= 1. This makes f(1) = 0
/// automatic and gives closed forms for the primitive F(r) = int_r^1 f and
/// all derivatives. Gross-Pitaevskii is b = {1}.
class Nonlinearity {
  public:
    static Nonlinearity gross_pitaevskii();
    static Nonlinearity polynomial(std::vector<double> coeffs);

    double f(double rho) const;
    double df(double rho) const;
    double d2f(double rho) const;
    double d3f(double rho) const;
    double F(double r) const;

    NonlinearityKind kind() const { return kind_; }
    const std::vector<double>& coeffs() const { return coeffs_; }

  private:
    Nonlinearity(NonlinearityKind kind, std::vector<double> coeffs);
    NonlinearityKind kind_;
    std::vector<double> coeffs_;  // b_1..b_m
};

struct ModelConstants {
    double c_s;       // sqrt(-2 f'(1))
    double k;         // 2 f''(1) + 6 f'(1)
    double k_tilde;   // -3/k
    double c0_hint;   // lower admissible speed, user supplied
};

/// sqrt(-2 f'(1)); throws DefocusingViolated if f'(1) >= 0.
double sound_speed(const Nonlinearity& nl);

/// (c_s, k, k_tilde); throws H3Violated if |f''(1) + 3 f'(1)| < tol.
ModelConstants transonic_constants(const Nonlinearity& nl, double c0_hint = 0.0,
                                   double tol = 1e-12);

struct HypothesisEntry {
    std::string name;
    bool pass = false;
    double violating_rho = 0.0;  // meaningful only when pass == false
    std::string detail;
};

struct HypothesisReport {
    HypothesisEntry defocusing;  // f'(1) < 0
    HypothesisEntry h1;          // c_s^2 (1-rho)^2 / 4 <= F(rho) on the scan
    HypothesisEntry h2;          // F(rho) <= M |1-rho|^q on [2, rho_max], fitted (M,q)
    HypothesisEntry h3;          // f''(1) + 3 f'(1) != 0
    double fitted_M = 0.0;
    double fitted_q = 0.0;
    bool all_pass() const {
        return defocusing.pass && h1.pass && h2.pass && h3.pass;
    }
};

/// Scans [0, rho_max] with n_scan points. H2 is checked on [2, rho_max] only
/// ("verified on window"); the asymptotic statement cannot be scanned.
HypothesisReport check_hypotheses(const Nonlinearity& nl, double rho_max = 4.0,
                                  int n_scan = 4001, double tol = 1e-12);

}  // namespace darksol
