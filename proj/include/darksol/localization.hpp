#pragma once

#include <vector>

#include "darksol/field.hpp"

namespace darksol {

/// tanh partitions of unity around ordered positions a_1 < ... < a_N:
///   Phi_k   = (tanh(tau(x - a_k + L/4)) - tanh(tau(x - a_k - L/4))) / 2
///   Phi_{k,k+1} fills the gaps so that sum Phi_k + sum Phi_{k,k+1} = 1
///   chi_k   = 1 (k=1), (1 + tanh(tau0(x - (a_k + a_{k-1})/2))) / 2, 0 (k=N+1)
struct CutoffFamily {
    Grid grid;
    std::vector<double> a;
    double tau = 0.0, tau0 = 0.0, L = 0.0;
    std::vector<std::vector<double>> phi;        // N entries
    std::vector<std::vector<double>> phi_gap;    // N+1 entries, k = 0..N
    std::vector<std::vector<double>> chi;        // N+1 entries, k = 1..N+1

    int n_solitons() const { return static_cast<int>(a.size()); }
};

/// Samples the exact tanh formulas. Requires a strictly increasing and
/// tau0 < 2 tau; throws BadOrdering otherwise.
CutoffFamily build_cutoffs(const std::vector<double>& a, double L, double tau,
                           double tau0, const Grid& grid);

/// p_k = int pi(Q) (chi_k - chi_{k+1}), pi = eta v / 2; k is 1-based.
double localized_momentum_pk(const HydroField& f, const CutoffFamily& cut, int k);

/// p~_k = int pi(Q) chi_k; p~_1 = p and p~_k = sum_{j>=k} p_j.
double tilde_momentum(const HydroField& f, const CutoffFamily& cut, int k);

/// G = E - sum_k c*_k p_k with the reference speeds held fixed.
double functional_G(const HydroField& f, const std::vector<double>& c_star,
                    const CutoffFamily& cut, const Nonlinearity& nl, Spectral& sp);

}  // namespace darksol
