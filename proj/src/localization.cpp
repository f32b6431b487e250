#include "darksol/localization.hpp"

#include <cmath>

namespace darksol {

CutoffFamily build_cutoffs(const std::vector<double>& a, double L, double tau,
                           double tau0, const Grid& grid) {
    const int N = static_cast<int>(a.size());
    if (N < 1) throw BadOrdering("need at least one position");
    for (int k = 0; k + 1 < N; ++k)
        if (!(a[k] < a[k + 1])) throw BadOrdering("positions must be strictly increasing");
    if (!(tau > 0.0) || !(tau0 > 0.0) || !(tau0 < 2.0 * tau))
        throw BadOrdering("need 0 < tau0 < 2 tau");

    CutoffFamily cut;
    cut.grid = grid;
    cut.a = a;
    cut.tau = tau;
    cut.tau0 = tau0;
    cut.L = L;
    cut.phi.assign(N, std::vector<double>(grid.n));
    cut.phi_gap.assign(N + 1, std::vector<double>(grid.n));
    cut.chi.assign(N + 1, std::vector<double>(grid.n));

    for (int j = 0; j < grid.n; ++j) {
        const double x = grid.node(j);
        for (int k = 0; k < N; ++k)
            cut.phi[k][j] = 0.5 * (std::tanh(tau * (x - a[k] + 0.25 * L)) -
                                   std::tanh(tau * (x - a[k] - 0.25 * L)));
        cut.phi_gap[0][j] = 0.5 * (1.0 - std::tanh(tau * (x - a[0] + 0.25 * L)));
        for (int k = 1; k < N; ++k)
            cut.phi_gap[k][j] = 0.5 * (std::tanh(tau * (x - a[k - 1] - 0.25 * L)) -
                                       std::tanh(tau * (x - a[k] + 0.25 * L)));
        cut.phi_gap[N][j] = 0.5 * (1.0 + std::tanh(tau * (x - a[N - 1] - 0.25 * L)));
        cut.chi[0][j] = 1.0;
        for (int k = 1; k < N; ++k)
            cut.chi[k][j] = 0.5 * (1.0 + std::tanh(tau0 * (x - 0.5 * (a[k] + a[k - 1]))));
        cut.chi[N][j] = 0.0;
    }
    return cut;
}

double localized_momentum_pk(const HydroField& f, const CutoffFamily& cut, int k) {
    const int N = cut.n_solitons();
    if (k < 1 || k > N) throw Error("pk: k out of range");
    double s = 0.0;
    const auto& lo = cut.chi[k - 1];
    const auto& hi = cut.chi[k];
    for (int j = 0; j < f.grid.n; ++j)
        s += 0.5 * f.eta[j] * f.v[j] * (lo[j] - hi[j]);
    return s * f.grid.dx();
}

double tilde_momentum(const HydroField& f, const CutoffFamily& cut, int k) {
    const int N = cut.n_solitons();
    if (k < 1 || k > N) throw Error("tilde momentum: k out of range");
    double s = 0.0;
    const auto& chi = cut.chi[k - 1];
    for (int j = 0; j < f.grid.n; ++j) s += 0.5 * f.eta[j] * f.v[j] * chi[j];
    return s * f.grid.dx();
}

double functional_G(const HydroField& f, const std::vector<double>& c_star,
                    const CutoffFamily& cut, const Nonlinearity& nl, Spectral& sp) {
    double g = energy(f, nl, sp);
    for (int k = 1; k <= cut.n_solitons(); ++k)
        g -= c_star[k - 1] * localized_momentum_pk(f, cut, k);
    return g;
}

}  // namespace darksol
