#include "darksol/evolution.hpp"

#include <cmath>

namespace darksol {

Evolver::Evolver(const Grid& g, const Nonlinearity& nl, bool dealias)
    : nl_(&nl), sp_(g), dealias_(dealias),
      k1_(g), k2_(g), k3_(g), k4_(g), stage_(g) {}

void Evolver::rhs(const HydroField& f, HydroField& out) {
    const int n = f.grid.n;
    if (f.max_eta() >= kVacuumThreshold)
        throw VacuumBreach("max eta = " + std::to_string(f.max_eta()));

    sp_.derivative(f.eta, deta_);
    sp_.second_derivative(f.eta, d2eta_);

    prod_.resize(n);
    bracket_.resize(n);
    for (int i = 0; i < n; ++i) {
        const double om = 1.0 - f.eta[i];
        prod_[i] = f.v[i] * om;
        bracket_[i] = nl_->f(om) - f.v[i] * f.v[i] - d2eta_[i] / (2.0 * om) -
                      deta_[i] * deta_[i] / (4.0 * om * om);
    }
    sp_.derivative(prod_, dprod_);
    out.grid = f.grid;
    out.eta.resize(n);
    out.v.resize(n);
    for (int i = 0; i < n; ++i) out.eta[i] = -2.0 * dprod_[i];
    sp_.derivative(bracket_, dprod_);
    for (int i = 0; i < n; ++i) out.v[i] = -dprod_[i];
    if (dealias_) {
        sp_.dealias(out.eta);
        sp_.dealias(out.v);
    }
}

void Evolver::rk4_step(HydroField& f, double h) {
    const int n = f.grid.n;
    rhs(f, k1_);
    for (int i = 0; i < n; ++i) {
        stage_.eta[i] = f.eta[i] + 0.5 * h * k1_.eta[i];
        stage_.v[i] = f.v[i] + 0.5 * h * k1_.v[i];
    }
    rhs(stage_, k2_);
    for (int i = 0; i < n; ++i) {
        stage_.eta[i] = f.eta[i] + 0.5 * h * k2_.eta[i];
        stage_.v[i] = f.v[i] + 0.5 * h * k2_.v[i];
    }
    rhs(stage_, k3_);
    for (int i = 0; i < n; ++i) {
        stage_.eta[i] = f.eta[i] + h * k3_.eta[i];
        stage_.v[i] = f.v[i] + h * k3_.v[i];
    }
    rhs(stage_, k4_);
    for (int i = 0; i < n; ++i) {
        f.eta[i] += h / 6.0 * (k1_.eta[i] + 2.0 * k2_.eta[i] + 2.0 * k3_.eta[i] + k4_.eta[i]);
        f.v[i] += h / 6.0 * (k1_.v[i] + 2.0 * k2_.v[i] + 2.0 * k3_.v[i] + k4_.v[i]);
    }
}

HydroField Evolver::integrate(HydroField f, const EvolutionConfig& cfg,
                              const Callback& cb) {
    const double dt = cfg.step(f.grid);
    if (!(cfg.t_end >= 0.0)) throw ConfigError("t_end must be nonnegative");
    const long steps = std::lround(std::ceil(cfg.t_end / dt - 1e-12));

    require_no_vacuum(f);
    if (cb) cb(0.0, f);
    double t = 0.0;
    for (long s = 0; s < steps; ++s) {
        // last step hits t_end exactly
        const double h = std::min(dt, cfg.t_end - t);
        try {
            rk4_step(f, h);
        } catch (const VacuumBreach&) {
            throw BlowUpDetected("vacuum reached inside a stage at t = " +
                                 std::to_string(t));
        }
        t += h;

        const double me = f.max_eta();
        if (!std::isfinite(me)) throw NonFinite("state lost finiteness at t = " + std::to_string(t));
        if (me >= kVacuumThreshold)
            throw BlowUpDetected("max eta = " + std::to_string(me) + " at t = " + std::to_string(t));
        if (cb && cfg.snapshot_every > 0 && (s + 1) % cfg.snapshot_every == 0 && s + 1 < steps)
            cb(t, f);
    }
    if (cb && steps > 0) cb(t, f);
    return f;
}

}  // namespace darksol
