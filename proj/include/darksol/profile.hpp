#pragma once

#include <utility>
#include <vector>

#include "darksol/field.hpp"
#include "darksol/grid.hpp"
#include "darksol/nonlinearity.hpp"
#include "darksol/pchip.hpp"

namespace darksol {

/// Effective potential N_c(x) = c^2 x^2 - 4(1-x) F(1-x) whose first positive
/// zero xi_c is the soliton's peak amplitude. Held in the power basis, which
/// the polynomial nonlinearity class makes exact; divided differences at the
/// turning point then evaluate without cancellation.
class NcPolynomial {
  public:
    NcPolynomial(const Nonlinearity& nl, double c_) : c(c_) {
        const auto& b = nl.coeffs();
        coeffs_.assign(b.size() + 3, 0.0);
        coeffs_[2] = c * c;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            coeffs_[j + 1] -= 4.0 * b[j - 1] / (j + 1.0);
            coeffs_[j + 2] += 4.0 * b[j - 1] / (j + 1.0);
        }
    }

    double value(double x) const {
        double s = 0.0;
        for (std::size_t k = coeffs_.size(); k-- > 0;) s = s * x + coeffs_[k];
        return s;
    }
    double deriv(double x) const {
        double s = 0.0;
        for (std::size_t k = coeffs_.size(); k-- > 1;) s = s * x + k * coeffs_[k];
        return s;
    }
    double second(double x) const {
        double s = 0.0;
        for (std::size_t k = coeffs_.size(); k-- > 2;) s = s * x + k * (k - 1) * coeffs_[k];
        return s;
    }
    /// (N(xi) - N(xi - s^2)) / s^2 via (xi^k - y^k)/h = sum_i xi^i y^(k-1-i);
    /// equals N'(xi) at s = 0 and never suffers the turning-point cancellation.
    double turning_ratio(double xi, double s) const {
        const double y = xi - s * s;
        double dd = 0.0;   // (xi^k - y^k)/h recurrence
        double xp = 1.0;   // xi^(k-1)
        double total = 0.0;
        for (std::size_t k = 1; k < coeffs_.size(); ++k) {
            dd = xp + y * dd;
            total += coeffs_[k] * dd;
            xp *= xi;
        }
        return total;
    }

    double c;

  private:
    std::vector<double> coeffs_;
};

/// Smallest xi in (0,1) with N_c(xi) = 0, N_c < 0 on (0,xi), N_c'(xi) > 0.
/// Bisection to 1e-13 after a sign-change scan. Throws NoZero.
double find_xi(const Nonlinearity& nl, double c);

/// d(xi_c)/dc = -2 c xi_c^2 / N_c'(xi_c); strictly negative.
double xi_derivative(const Nonlinearity& nl, double c);

/// Single dark-soliton profile at speed c in (0, c_s), computed by inverting
/// x(eta) = int_eta^xi dz / sqrt(-N_c(z)) with the endpoint substitution
/// z = xi - s^2, then switching to the analytic tail A exp(-nu x) once eta
/// drops below tail_floor = 1e-10 xi. Evaluation anywhere on the line; the
/// first integral supplies exact spatial derivatives.
class SolitonProfile {
  public:
    SolitonProfile(const Nonlinearity& nl, double c);

    double c() const { return c_; }
    double xi() const { return xi_; }
    double nu() const { return nu_; }
    double c_sound() const { return cs_; }
    double tail_floor() const { return tail_floor_; }
    double x_tail() const { return x_tail_; }

    double eta_at(double x) const;
    double deta_at(double x) const;   // -sign(x) sqrt(-N_c(eta))
    double d2eta_at(double x) const;  // -N_c'(eta)/2
    double v_at(double x) const;      // c eta / (2(1-eta))
    double dv_at(double x) const;
    double d2v_at(double x) const;

    /// Sample (eta, v) centered at a with periodic wrapping; throws
    /// GridTooSmall if the grid cannot hold the decay.
    HydroField sample(const Grid& g, double a = 0.0) const;
    void add_to(HydroField& f, double a) const;
    void check_grid(const Grid& g) const;

  private:
    const Nonlinearity* nl_;
    double c_, cs_, nu_, xi_, tail_floor_, x_tail_;
    HermiteSpline eta_of_x_;  // on [0, x_tail]
};

struct ProfileBuild {
    SolitonProfile profile;
    HydroField field;
};

/// Profile sampled on a grid (centered at 0). Checks the decay fits the grid.
ProfileBuild build_profile(const Nonlinearity& nl, double c, const Grid& g);

/// Central finite differences of two profile builds; h defaults to
/// 1e-3 (c_s - c). Returns (d_c eta, d_c v) as one HydroField.
HydroField profile_c_derivative(const Nonlinearity& nl, double c, const Grid& g,
                                double h = 0.0);

/// p(Q_c) = (c/2) int_0^xi z^2 / ((1-z) sqrt(-N_c(z))) dz, desingularized at z = xi.
double soliton_momentum(const Nonlinearity& nl, double c);

/// Central difference of soliton_momentum; h defaults to 1e-3 (c_s - c).
double momentum_derivative(const Nonlinearity& nl, double c, double h = 0.0);

/// Closed-form split term II_c = c xi^{5/2} / ((1-xi) sqrt(N_c'(xi))).
double momentum_split_term(const Nonlinearity& nl, double c);

}  // namespace darksol
