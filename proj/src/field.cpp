#include "darksol/field.hpp"

#include <algorithm>
#include <cmath>

namespace darksol {

double HydroField::max_eta() const {
    double m = -1e300;
    for (double e : eta) m = std::max(m, e);
    return m;
}

bool HydroField::finite() const {
    for (double e : eta)
        if (!std::isfinite(e)) return false;
    for (double w : v)
        if (!std::isfinite(w)) return false;
    return true;
}

HydroField operator+(const HydroField& a, const HydroField& b) {
    HydroField r(a.grid);
    for (int i = 0; i < a.grid.n; ++i) {
        r.eta[i] = a.eta[i] + b.eta[i];
        r.v[i] = a.v[i] + b.v[i];
    }
    return r;
}

HydroField operator-(const HydroField& a, const HydroField& b) {
    HydroField r(a.grid);
    for (int i = 0; i < a.grid.n; ++i) {
        r.eta[i] = a.eta[i] - b.eta[i];
        r.v[i] = a.v[i] - b.v[i];
    }
    return r;
}

HydroField operator*(double s, const HydroField& f) {
    HydroField r(f.grid);
    for (int i = 0; i < f.grid.n; ++i) {
        r.eta[i] = s * f.eta[i];
        r.v[i] = s * f.v[i];
    }
    return r;
}

double inner_l2(const HydroField& a, const HydroField& b) {
    double s = 0.0;
    for (int i = 0; i < a.grid.n; ++i) s += a.eta[i] * b.eta[i] + a.v[i] * b.v[i];
    return s * a.grid.dx();
}

double norm_l2(const HydroField& a) { return std::sqrt(inner_l2(a, a)); }

void require_no_vacuum(const HydroField& f) {
    if (f.max_eta() >= kVacuumThreshold)
        throw VacuumBreach("max eta = " + std::to_string(f.max_eta()));
}

double x_norm(const HydroField& f, Spectral& sp) {
    std::vector<double> deta;
    sp.derivative(f.eta, deta);
    double s = 0.0;
    for (int i = 0; i < f.grid.n; ++i)
        s += f.eta[i] * f.eta[i] + deta[i] * deta[i] + f.v[i] * f.v[i];
    return std::sqrt(s * f.grid.dx());
}

double energy(const HydroField& f, const Nonlinearity& nl, Spectral& sp) {
    require_no_vacuum(f);
    std::vector<double> deta;
    sp.derivative(f.eta, deta);
    double s = 0.0;
    for (int i = 0; i < f.grid.n; ++i) {
        const double om = 1.0 - f.eta[i];
        s += 0.125 * deta[i] * deta[i] / om + 0.5 * om * f.v[i] * f.v[i] +
             0.5 * nl.F(om);
    }
    return s * f.grid.dx();
}

double momentum(const HydroField& f) {
    double s = 0.0;
    for (int i = 0; i < f.grid.n; ++i) s += f.eta[i] * f.v[i];
    return 0.5 * s * f.grid.dx();
}

double energy_pairing(const HydroField& f, const HydroField& eps,
                      const Nonlinearity& nl, Spectral& sp) {
    require_no_vacuum(f);
    std::vector<double> deta, deps;
    sp.derivative(f.eta, deta);
    sp.derivative(eps.eta, deps);
    double s = 0.0;
    for (int i = 0; i < f.grid.n; ++i) {
        const double om = 1.0 - f.eta[i];
        s += deta[i] * deps[i] / (4.0 * om) +
             deta[i] * deta[i] * eps.eta[i] / (8.0 * om * om) +
             om * f.v[i] * eps.v[i] +
             0.5 * (nl.f(om) - f.v[i] * f.v[i]) * eps.eta[i];
    }
    return s * f.grid.dx();
}

HydroField grad_energy(const HydroField& f, const Nonlinearity& nl, Spectral& sp) {
    require_no_vacuum(f);
    const int n = f.grid.n;
    std::vector<double> deta, tmp(n), dtmp;
    sp.derivative(f.eta, deta);
    for (int i = 0; i < n; ++i) tmp[i] = deta[i] / (1.0 - f.eta[i]);
    sp.derivative(tmp, dtmp);
    HydroField g(f.grid);
    for (int i = 0; i < n; ++i) {
        const double om = 1.0 - f.eta[i];
        g.eta[i] = -0.25 * dtmp[i] + deta[i] * deta[i] / (8.0 * om * om) +
                   0.5 * (nl.f(om) - f.v[i] * f.v[i]);
        g.v[i] = om * f.v[i];
    }
    return g;
}

HydroField grad_momentum(const HydroField& f) {
    HydroField g(f.grid);
    for (int i = 0; i < f.grid.n; ++i) {
        g.eta[i] = 0.5 * f.v[i];
        g.v[i] = 0.5 * f.eta[i];
    }
    return g;
}

HydroField hessian_energy_apply(const HydroField& f, const HydroField& eps,
                                const Nonlinearity& nl, Spectral& sp) {
    require_no_vacuum(f);
    const int n = f.grid.n;
    std::vector<double> deta, deps, tmp(n), dtmp;
    sp.derivative(f.eta, deta);
    sp.derivative(eps.eta, deps);
    HydroField h(f.grid);
    // -D(D eta eps_eta / (4(1-eta)^2)) term
    for (int i = 0; i < n; ++i) {
        const double om = 1.0 - f.eta[i];
        tmp[i] = deta[i] * eps.eta[i] / (4.0 * om * om);
    }
    sp.derivative(tmp, dtmp);
    for (int i = 0; i < n; ++i) h.eta[i] = -dtmp[i];
    // -D(D eps_eta / (4(1-eta))) term
    for (int i = 0; i < n; ++i) tmp[i] = deps[i] / (4.0 * (1.0 - f.eta[i]));
    sp.derivative(tmp, dtmp);
    for (int i = 0; i < n; ++i) {
        const double om = 1.0 - f.eta[i];
        h.eta[i] += -dtmp[i] + deta[i] * deta[i] * eps.eta[i] / (4.0 * om * om * om) +
                    deta[i] * deps[i] / (4.0 * om * om) -
                    0.5 * nl.df(om) * eps.eta[i] - f.v[i] * eps.v[i];
        h.v[i] = om * eps.v[i] - f.v[i] * eps.eta[i];
    }
    return h;
}

double hessian_energy_form(const HydroField& f, const HydroField& eps,
                           const Nonlinearity& nl, Spectral& sp) {
    require_no_vacuum(f);
    std::vector<double> deta, deps;
    sp.derivative(f.eta, deta);
    sp.derivative(eps.eta, deps);
    double s = 0.0;
    for (int i = 0; i < f.grid.n; ++i) {
        const double om = 1.0 - f.eta[i];
        s += deta[i] * deta[i] * eps.eta[i] * eps.eta[i] / (4.0 * om * om * om) +
             deta[i] * eps.eta[i] * deps[i] / (2.0 * om * om) +
             deps[i] * deps[i] / (4.0 * om) + om * eps.v[i] * eps.v[i] -
             2.0 * f.v[i] * eps.eta[i] * eps.v[i] -
             0.5 * nl.df(om) * eps.eta[i] * eps.eta[i];
    }
    return s * f.grid.dx();
}

}  // namespace darksol
