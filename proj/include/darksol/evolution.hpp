#pragma once

#include <functional>

#include "darksol/field.hpp"

namespace darksol {

struct EvolutionConfig {
    double dt = 0.0;           // explicit step; if 0, use cfl_lambda * dx^2
    double t_end = 0.0;
    double cfl_lambda = 0.2;   // RK4 imaginary-axis reach ~2.8 vs k_max^2 dt
    bool dealias = false;      // 2/3 rule on the nonlinear right-hand side
    int snapshot_every = 0;    // steps between callbacks; 0 = only t=0 and t_end

    double step(const Grid& g) const {
        if (dt > 0.0) return dt;
        if (!(cfl_lambda > 0.0) || cfl_lambda > 0.25)
            throw ConfigError("cfl_lambda must lie in (0, 0.25]");
        return cfl_lambda * g.dx() * g.dx();
    }
};

/// Right-hand side of the hydrodynamical system:
///   d_t eta = -2 D(v (1-eta))
///   d_t v   = -D(f(1-eta) - v^2 - D^2 eta/(2(1-eta)) - (D eta)^2/(4(1-eta)^2))
/// Throws VacuumBreach when max eta >= 1 - 1e-6.
class Evolver {
  public:
    Evolver(const Grid& g, const Nonlinearity& nl, bool dealias = false);

    void rhs(const HydroField& f, HydroField& out);
    HydroField rhs(const HydroField& f) {
        HydroField out(f.grid);
        rhs(f, out);
        return out;
    }

    /// Classical RK4 up to cfg.t_end. The callback fires at t = 0, every
    /// snapshot_every steps, and at t_end. Throws BlowUpDetected when the
    /// vacuum threshold is crossed, NonFinite on NaN/Inf.
    using Callback = std::function<void(double t, const HydroField&)>;
    HydroField integrate(HydroField f, const EvolutionConfig& cfg,
                         const Callback& cb = nullptr);

    /// One classical RK4 step of signed size h (the system is reversible).
    void rk4_step(HydroField& f, double h);

    Spectral& spectral() { return sp_; }

  private:
    const Nonlinearity* nl_;
    Spectral sp_;
    bool dealias_;
    // scratch
    std::vector<double> deta_, d2eta_, prod_, dprod_, bracket_;
    HydroField k1_, k2_, k3_, k4_, stage_;
};

}  // namespace darksol
