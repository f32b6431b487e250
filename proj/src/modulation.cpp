#include "darksol/modulation.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

namespace darksol {

void ChainSpec::validate(const Nonlinearity& nl) const {
    const double cs = sound_speed(nl);
    if (speeds.empty() || speeds.size() != positions.size())
        throw ConfigError("chain spec needs matching speeds and positions");
    for (std::size_t k = 0; k < speeds.size(); ++k) {
        if (!(speeds[k] > 0.0 && speeds[k] < cs))
            throw BadOrdering("speed " + std::to_string(speeds[k]) + " outside (0, c_s)");
        if (k > 0 && !(speeds[k - 1] < speeds[k]))
            throw BadOrdering("speeds must be strictly increasing");
        if (k > 0 && !(positions[k - 1] < positions[k]))
            throw BadOrdering("positions must be strictly increasing");
    }
}

double ChainSpec::min_gap() const {
    double g = 1e300;
    for (std::size_t k = 1; k < positions.size(); ++k)
        g = std::min(g, positions[k] - positions[k - 1]);
    return positions.size() > 1 ? g : 0.0;
}

HydroField build_chain(const ChainSpec& spec, const Nonlinearity& nl, const Grid& g) {
    spec.validate(nl);
    HydroField f(g);
    for (int k = 0; k < spec.size(); ++k) {
        SolitonProfile p(nl, spec.speeds[k]);
        p.check_grid(g);
        const double margin = 10.0 / p.nu();
        if (std::abs(spec.positions[k]) > g.half_length() - margin)
            throw GridTooSmall("position a_" + std::to_string(k + 1) +
                               " too close to the domain edge");
        p.add_to(f, spec.positions[k]);
    }
    if (f.max_eta() >= kVacuumThreshold)
        throw VacuumBreach("summed chain reaches vacuum: insufficient separation");
    return f;
}

namespace {

// Per-soliton sampled data used by the Newton residuals and matrix.
struct SolitonSamples {
    HydroField q;      // (eta, v)
    HydroField dxq;    // exact spatial derivative from the first integral
    HydroField d2xq;   // exact second derivative
    HydroField dcq;    // central difference in c
    HydroField dcdxq;  // central difference of the spatial derivative
};

SolitonSamples sample_soliton(const Nonlinearity& nl, double c, double a,
                              const Grid& g, double cs) {
    SolitonSamples s{HydroField(g), HydroField(g), HydroField(g), HydroField(g),
                     HydroField(g)};
    const double h = 1e-3 * (cs - c);
    SolitonProfile p(nl, c), ph(nl, c + h), pl(nl, c - h);
    for (int j = 0; j < g.n; ++j) {
        const double d = g.wrap(g.node(j) - a);
        s.q.eta[j] = p.eta_at(d);
        s.q.v[j] = p.v_at(d);
        s.dxq.eta[j] = p.deta_at(d);
        s.dxq.v[j] = p.dv_at(d);
        s.d2xq.eta[j] = p.d2eta_at(d);
        s.d2xq.v[j] = p.d2v_at(d);
        s.dcq.eta[j] = (ph.eta_at(d) - pl.eta_at(d)) / (2.0 * h);
        s.dcq.v[j] = (ph.v_at(d) - pl.v_at(d)) / (2.0 * h);
        s.dcdxq.eta[j] = (ph.deta_at(d) - pl.deta_at(d)) / (2.0 * h);
        s.dcdxq.v[j] = (ph.dv_at(d) - pl.dv_at(d)) / (2.0 * h);
    }
    return s;
}

double grad_p_dot(const HydroField& q, const HydroField& eps) {
    // grad p(q) . eps = 1/2 int (eta_q eps_v + v_q eps_eta)
    double s = 0.0;
    for (int j = 0; j < q.grid.n; ++j)
        s += q.eta[j] * eps.v[j] + q.v[j] * eps.eta[j];
    return 0.5 * s * q.grid.dx();
}

struct NewtonState {
    std::vector<SolitonSamples> sol;
    HydroField epsilon;
    std::vector<double> residual;    // raw residuals, length 2N
    std::vector<double> scale;       // normalization per residual
    double norm = 0.0;               // max |residual/scale|
};

NewtonState evaluate_state(const HydroField& field, const std::vector<double>& c,
                           const std::vector<double>& a, const Nonlinearity& nl,
                           double cs) {
    const int N = static_cast<int>(c.size());
    NewtonState st;
    st.epsilon = field;
    st.sol.reserve(N);
    for (int k = 0; k < N; ++k) {
        st.sol.push_back(sample_soliton(nl, c[k], a[k], field.grid, cs));
        const auto& q = st.sol.back().q;
        for (int j = 0; j < field.grid.n; ++j) {
            st.epsilon.eta[j] -= q.eta[j];
            st.epsilon.v[j] -= q.v[j];
        }
    }
    st.residual.resize(2 * N);
    st.scale.resize(2 * N);
    st.norm = 0.0;
    for (int k = 0; k < N; ++k) {
        st.residual[k] = inner_l2(st.epsilon, st.sol[k].dxq);
        st.scale[k] = std::max(norm_l2(st.sol[k].dxq), 1e-300);
        st.residual[N + k] = grad_p_dot(st.sol[k].q, st.epsilon);
        st.scale[N + k] = std::max(0.5 * norm_l2(st.sol[k].q), 1e-300);
        st.norm = std::max(st.norm, std::abs(st.residual[k]) / st.scale[k]);
        st.norm = std::max(st.norm, std::abs(st.residual[N + k]) / st.scale[N + k]);
    }
    return st;
}

Mat newton_matrix(const NewtonState& st) {
    const int N = static_cast<int>(st.sol.size());
    Mat M(2 * N);
    for (int k = 0; k < N; ++k) {
        for (int j = 0; j < N; ++j) {
            M.at(k, j) = inner_l2(st.sol[j].dxq, st.sol[k].dxq);
            M.at(k, N + j) = -inner_l2(st.sol[j].dcq, st.sol[k].dxq);
            M.at(N + k, j) = grad_p_dot(st.sol[k].q, st.sol[j].dxq);
            M.at(N + k, N + j) = -grad_p_dot(st.sol[k].q, st.sol[j].dcq);
        }
        M.at(k, k) -= inner_l2(st.sol[k].d2xq, st.epsilon);
        M.at(k, N + k) += inner_l2(st.sol[k].dcdxq, st.epsilon);
        M.at(N + k, k) -= grad_p_dot(st.sol[k].dxq, st.epsilon);
        M.at(N + k, N + k) += grad_p_dot(st.sol[k].dcq, st.epsilon);
    }
    return M;
}

void solve_small(Mat M, std::vector<double>& rhs) {
    std::vector<lapack_int> piv(M.n);
    const lapack_int info = LAPACKE_dgesv(LAPACK_ROW_MAJOR, M.n, 1, M.data.data(), M.n,
                                          piv.data(), rhs.data(), 1);
    if (info != 0) throw SolverFail("dgesv failed on the modulation system");
}

}  // namespace

ModulationFit decompose(const HydroField& field, const ChainSpec& guess,
                        const Nonlinearity& nl, const DecomposeOptions& opts) {
    const double cs = sound_speed(nl);
    const int N = guess.size();
    if (N < 1 || guess.speeds.size() != guess.positions.size())
        throw ConfigError("decompose: bad guess");
    std::vector<double> c = guess.speeds, a = guess.positions;

    const double tol =
        (opts.tol > 0.0) ? opts.tol : 1e-12 * std::max(1.0, norm_l2(field));

    NewtonState st = evaluate_state(field, c, a, nl, cs);
    int iters = 0;
    while (st.norm > tol && iters < opts.max_iters) {
        Mat M = newton_matrix(st);
        std::vector<double> step(2 * N);
        for (int i = 0; i < 2 * N; ++i) step[i] = -st.residual[i];
        solve_small(M, step);

        double alpha = 1.0;
        bool accepted = false;
        for (int h = 0; h <= opts.max_halvings; ++h, alpha *= 0.5) {
            std::vector<double> cn(N), an(N);
            bool admissible = true;
            for (int k = 0; k < N; ++k) {
                an[k] = a[k] + alpha * step[k];
                cn[k] = c[k] + alpha * step[N + k];
                if (!(cn[k] > 0.02 && cn[k] < cs - 1e-9)) admissible = false;
            }
            if (!admissible) continue;
            NewtonState trial = evaluate_state(field, cn, an, nl, cs);
            if (trial.norm < st.norm || trial.norm <= tol) {
                st = std::move(trial);
                c = std::move(cn);
                a = std::move(an);
                accepted = true;
                break;
            }
        }
        ++iters;
        if (!accepted)
            throw NoConvergence("modulation Newton stalled at residual " +
                                std::to_string(st.norm));
    }
    if (st.norm > tol)
        throw NoConvergence("modulation Newton did not converge: residual " +
                            std::to_string(st.norm));

    ModulationFit fit;
    fit.c = std::move(c);
    fit.a = std::move(a);
    fit.epsilon = std::move(st.epsilon);
    fit.residual_norm = st.norm;
    fit.newton_iters = iters;
    Spectral sp(field.grid);
    fit.eps_xnorm = x_norm(fit.epsilon, sp);
    return fit;
}

ModulationMatrices modulation_matrix(const HydroField& field, const ModulationFit& fit,
                                     const Nonlinearity& nl) {
    const double cs = sound_speed(nl);
    NewtonState st = evaluate_state(field, fit.c, fit.a, nl, cs);
    ModulationMatrices out;
    out.M = newton_matrix(st);
    const int N = static_cast<int>(fit.c.size());
    out.D = Mat(2 * N);
    for (int k = 0; k < N; ++k) {
        out.D.at(k, k) = inner_l2(st.sol[k].dxq, st.sol[k].dxq);
        out.D.at(N + k, N + k) = -grad_p_dot(st.sol[k].q, st.sol[k].dcq);
    }
    out.H = Mat(2 * N);
    for (int i = 0; i < 2 * N; ++i)
        for (int j = 0; j < 2 * N; ++j)
            out.H.at(i, j) = out.M.at(i, j) - out.D.at(i, j);
    return out;
}

Tracker::Tracker(const Nonlinearity& nl, ChainSpec initial_guess)
    : nl_(&nl), guess_(std::move(initial_guess)) {}

ModulationFit Tracker::feed(const HydroField& field) {
    ModulationFit fit = decompose(field, guess_, *nl_);
    guess_.speeds = fit.c;
    guess_.positions = fit.a;
    return fit;
}

void finite_difference_rates(TrackResult& tr) {
    const std::size_t m = tr.points.size();
    if (m == 0) return;
    const int N = static_cast<int>(tr.points[0].fit.c.size());
    tr.a_prime.assign(m, std::vector<double>(N, 0.0));
    tr.c_prime.assign(m, std::vector<double>(N, 0.0));
    if (m < 2) return;
    auto slope = [&](auto getter, std::size_t i, int k) {
        const std::size_t lo = (i == 0) ? 0 : i - 1;
        const std::size_t hi = (i + 1 == m) ? i : i + 1;
        const double dt = tr.points[hi].t - tr.points[lo].t;
        return (getter(tr.points[hi].fit, k) - getter(tr.points[lo].fit, k)) / dt;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (int k = 0; k < N; ++k) {
            tr.a_prime[i][k] = slope([](const ModulationFit& f, int k_) { return f.a[k_]; }, i, k);
            tr.c_prime[i][k] = slope([](const ModulationFit& f, int k_) { return f.c[k_]; }, i, k);
        }
}

TrackResult track(const std::vector<std::pair<double, HydroField>>& snapshots,
                  const ChainSpec& initial_guess, const Nonlinearity& nl) {
    TrackResult tr;
    Tracker tracker(nl, initial_guess);
    for (const auto& [t, field] : snapshots) {
        try {
            tr.points.push_back({t, tracker.feed(field)});
        } catch (const NoConvergence& e) {
            tr.aborted = true;
            tr.abort_reason = e.what();
            break;
        }
    }
    finite_difference_rates(tr);
    return tr;
}

}  // namespace darksol
