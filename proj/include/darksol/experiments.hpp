#pragma once

#include <string>
#include <vector>

#include "darksol/io.hpp"

namespace darksol {

struct ExperimentResult {
    int exit_code = 0;
    json report;
};

/// Dispatch on config["kind"]: profile | spectrum | evolve | chain-stability
/// | verify-appendix. Each run validates its config up front (ConfigError),
/// writes the configured artifacts, embeds the resolved config in the JSON
/// report, and returns nonzero on any failed verdict.
ExperimentResult run_experiment(const json& config);

ExperimentResult run_profile_experiment(json cfg);
ExperimentResult run_spectrum_experiment(json cfg);
ExperimentResult run_evolve_experiment(json cfg);
ExperimentResult run_chain_stability_experiment(json cfg);
ExperimentResult run_verify_appendix_experiment(json cfg);

/// Fan independent configs out across worker threads; parallelism capped by
/// the DARKSOL_THREADS environment variable. Returns the worst exit code.
int run_sweep(const std::vector<std::string>& config_paths);

// ------------------------------------------------------------------------
// Reusable run machinery (shared with the acceptance suite).

struct TrackedRunParams {
    Nonlinearity nl = Nonlinearity::gross_pitaevskii();
    Grid grid;
    HydroField initial;
    EvolutionConfig evo;
    bool tracking = false;
    ChainSpec guess;                // warm-start guess when tracking
    std::vector<double> c_star;     // fixed reference speeds (G, distances)
    double tau = 0.0, tau0 = 0.0;   // cutoff rates; 0 = nu/8 and nu/16 defaults
};

struct TrackedRunResult {
    std::vector<DiagnosticsRecord> series;
    std::vector<double> distances;  // ||Q(t) - R_{c*,a(t)}||_X per snapshot
    TrackResult track;              // fits without the epsilon fields
    HydroField final_field;
    bool track_ok = true;
    std::string track_error;
    double tau = 0.0, tau0 = 0.0;   // the rates actually used
};

TrackedRunResult run_tracked_evolution(const TrackedRunParams& prm);

}  // namespace darksol
