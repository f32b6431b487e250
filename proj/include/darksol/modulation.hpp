#pragma once

#include <vector>

#include "darksol/field.hpp"
#include "darksol/profile.hpp"

namespace darksol {

/// Ordered chain data: speeds strictly increasing in (0, c_s), positions with
/// gaps larger than the separation scale.
struct ChainSpec {
    std::vector<double> speeds;
    std::vector<double> positions;

    int size() const { return static_cast<int>(speeds.size()); }
    void validate(const Nonlinearity& nl) const;
    double min_gap() const;
};

/// Sampled sum of translated profiles. Throws VacuumBreach if the summed eta
/// reaches the vacuum threshold (insufficient separation).
HydroField build_chain(const ChainSpec& spec, const Nonlinearity& nl, const Grid& g);

struct ModulationFit {
    std::vector<double> c;
    std::vector<double> a;
    HydroField epsilon;
    double residual_norm = 0.0;  // max normalized orthogonality residual
    double eps_xnorm = 0.0;
    int newton_iters = 0;
};

/// Small dense matrix, row-major.
struct Mat {
    int n = 0;
    std::vector<double> data;
    Mat() = default;
    explicit Mat(int n_) : n(n_), data(static_cast<std::size_t>(n_) * n_, 0.0) {}
    double& at(int i, int j) { return data[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return data[static_cast<std::size_t>(i) * n + j]; }
};

struct ModulationMatrices {
    Mat M, D, H;  // M = D + H, D diagonal
};

struct DecomposeOptions {
    int max_iters = 50;
    int max_halvings = 8;
    double tol = 0.0;  // 0 = auto: 1e-12 max(1, ||field||_L2)
};

/// Damped Newton on the 2N orthogonality residuals
///   <eps, dx Q_{c_k,a_k}>_{L2xL2} = 0,  grad p(Q_{c_k,a_k}) . eps = 0,
/// unknowns (a, c), Jacobian given by the same inner products as the
/// modulation matrix. Throws NoConvergence when the field is outside the tube.
ModulationFit decompose(const HydroField& field, const ChainSpec& guess,
                        const Nonlinearity& nl, const DecomposeOptions& opts = {});

/// The matrix M = D + H at a converged fit (D diagonal by parity).
ModulationMatrices modulation_matrix(const HydroField& field, const ModulationFit& fit,
                                     const Nonlinearity& nl);

/// Warm-started sequential decomposition for snapshot streams.
class Tracker {
  public:
    Tracker(const Nonlinearity& nl, ChainSpec initial_guess);
    ModulationFit feed(const HydroField& field);
    const ChainSpec& guess() const { return guess_; }

  private:
    const Nonlinearity* nl_;
    ChainSpec guess_;
};

struct TrackPoint {
    double t;
    ModulationFit fit;
};

/// Decompose each snapshot with warm starts; aborts with partial output when
/// a snapshot fails to converge (abort flag set).
struct TrackResult {
    std::vector<TrackPoint> points;
    bool aborted = false;
    std::string abort_reason;
    /// centered finite differences of the fitted series on the snapshot times
    std::vector<std::vector<double>> a_prime;  // [point][k]
    std::vector<std::vector<double>> c_prime;
};

TrackResult track(const std::vector<std::pair<double, HydroField>>& snapshots,
                  const ChainSpec& initial_guess, const Nonlinearity& nl);

/// Finite-difference series for an already-collected track.
void finite_difference_rates(TrackResult& tr);

}  // namespace darksol
