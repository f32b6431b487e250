#include "darksol/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "darksol/linearization.hpp"

namespace darksol {

namespace {

Grid grid_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("length"))
        throw ConfigError("grid spec needs n and length");
    return Grid(j.at("n").get<int>(), j.at("length").get<double>());
}

json grid_to_json(const Grid& g) {
    return json{{"n", g.n}, {"length", g.length}};
}

void check_outputs(const json& cfg) {
    if (!cfg.contains("output")) return;
    const auto& out = cfg.at("output");
    for (const char* key : {"csv_path", "json_path", "field_csv_path"})
        if (out.contains(key))
            require_writable_parent(out.at(key).get<std::string>());
}

std::string output_path(const json& cfg, const char* key) {
    if (cfg.contains("output") && cfg.at("output").contains(key))
        return cfg.at("output").at(key).get<std::string>();
    return {};
}

void emit_report(const json& cfg, json& report) {
    report["config"] = cfg;
    const std::string path = output_path(cfg, "json_path");
    if (!path.empty()) write_json_file(path, report);
}

void validate_ordered_speeds(const std::vector<double>& speeds) {
    for (std::size_t k = 1; k < speeds.size(); ++k)
        if (!(speeds[k - 1] < speeds[k]))
            throw ConfigError("speeds must be strictly increasing");
}

}  // namespace

TrackedRunResult run_tracked_evolution(const TrackedRunParams& prm) {
    TrackedRunResult out;
    Evolver ev(prm.grid, prm.nl, prm.evo.dealias);
    Spectral& sp = ev.spectral();

    const int N = prm.tracking ? prm.guess.size() : 0;
    double nu_min = 1e300;
    std::vector<SolitonProfile> ref_profiles;
    if (prm.tracking) {
        for (double c : prm.c_star) {
            ref_profiles.emplace_back(prm.nl, c);
            nu_min = std::min(nu_min, ref_profiles.back().nu());
        }
        out.tau = prm.tau > 0.0 ? prm.tau : nu_min / 8.0;
        out.tau0 = prm.tau0 > 0.0 ? prm.tau0 : nu_min / 16.0;
    }

    Tracker tracker(prm.nl, prm.guess);
    bool tracking_live = prm.tracking;

    auto snapshot = [&](double t, const HydroField& f) {
        DiagnosticsRecord rec;
        rec.t = t;
        rec.E = energy(f, prm.nl, sp);
        rec.p = momentum(f);
        rec.max_eta = f.max_eta();
        if (tracking_live) {
            try {
                ModulationFit fit = tracker.feed(f);
                rec.c = fit.c;
                rec.a = fit.a;
                rec.eps_xnorm = fit.eps_xnorm;
                rec.residual = fit.residual_norm;
                double min_gap = 0.25 * prm.grid.length;
                for (int k = 0; k + 1 < N; ++k)
                    min_gap = std::min(min_gap, fit.a[k + 1] - fit.a[k]);
                CutoffFamily cut =
                    build_cutoffs(fit.a, min_gap, out.tau, out.tau0, prm.grid);
                rec.p_tilde.resize(N);
                for (int k = 1; k <= N; ++k)
                    rec.p_tilde[k - 1] = tilde_momentum(f, cut, k);
                rec.G = functional_G(f, prm.c_star, cut, prm.nl, sp);
                // distance to the reference-speed chain at the fitted centers
                HydroField ref(prm.grid);
                for (int k = 0; k < N; ++k) ref_profiles[k].add_to(ref, fit.a[k]);
                out.distances.push_back(x_norm(f - ref, sp));
                ModulationFit light = fit;
                light.epsilon = HydroField();
                out.track.points.push_back({t, std::move(light)});
            } catch (const NoConvergence& e) {
                tracking_live = false;
                out.track_ok = false;
                out.track_error = e.what();
                out.track.aborted = true;
                out.track.abort_reason = e.what();
            }
        }
        out.series.push_back(std::move(rec));
    };

    out.final_field = ev.integrate(prm.initial, prm.evo, snapshot);
    finite_difference_rates(out.track);
    return out;
}

// --------------------------------------------------------------- profile ---

ExperimentResult run_profile_experiment(json cfg) {
    check_outputs(cfg);
    const Nonlinearity nl = nonlinearity_from_json(cfg.at("nonlinearity"));
    const double c = cfg.at("c").get<double>();
    const Grid g = grid_from_json(cfg.at("grid"));

    ProfileBuild pb = build_profile(nl, c, g);
    const double p = soliton_momentum(nl, c);
    const double dpdc = momentum_derivative(nl, c);

    const std::string csv = output_path(cfg, "csv_path");
    if (!csv.empty()) write_field_csv(csv, pb.field);

    json report{{"kind", "profile"},
                {"xi_c", pb.profile.xi()},
                {"nu_c", pb.profile.nu()},
                {"p", p},
                {"dp_dc", dpdc}};
    emit_report(cfg, report);
    return {0, report};
}

// -------------------------------------------------------------- spectrum ---

ExperimentResult run_spectrum_experiment(json cfg) {
    check_outputs(cfg);
    const Nonlinearity nl = nonlinearity_from_json(cfg.at("nonlinearity"));
    const double c = cfg.at("c").get<double>();
    const Grid g = grid_from_json(cfg.at("grid"));
    const int m = cfg.value("m", 6);

    SolitonProfile prof(nl, c);
    HcOperator op = assemble_hc(prof, g, nl);
    auto pairs = low_spectrum(op, m);
    const double floor = essential_spectrum_floor(nl, c);
    const double lc = constrained_coercivity(op, prof, nl);

    const std::string csv = output_path(cfg, "csv_path");
    if (!csv.empty()) {
        CsvWriter w(csv);
        w.header({"index", "eigenvalue"});
        for (std::size_t i = 0; i < pairs.size(); ++i)
            w.row({static_cast<double>(i), pairs[i].value});
        w.flush();
    }
    json eigs = json::array();
    for (const auto& pr : pairs) eigs.push_back(pr.value);
    json report{{"kind", "spectrum"}, {"eigenvalues", eigs}, {"floor", floor}, {"l_c", lc}};
    emit_report(cfg, report);
    return {0, report};
}

// ---------------------------------------------------------------- evolve ---

namespace {

HydroField initial_from_json(const json& cfg, const Nonlinearity& nl, const Grid& g,
                             ChainSpec& guess, std::vector<double>& c_star,
                             bool& can_track) {
    const auto& init = cfg.at("initial");
    const std::string type = init.at("type").get<std::string>();
    can_track = true;
    if (type == "soliton") {
        const double c = init.at("c").get<double>();
        const double a = init.value("a", 0.0);
        SolitonProfile p(nl, c);
        guess.speeds = {c};
        guess.positions = {a};
        c_star = {c};
        return p.sample(g, a);
    }
    if (type == "chain") {
        ChainSpec spec;
        spec.speeds = init.at("speeds").get<std::vector<double>>();
        validate_ordered_speeds(spec.speeds);
        spec.positions = init.at("positions").get<std::vector<double>>();
        HydroField f = build_chain(spec, nl, g);
        guess = spec;
        c_star = spec.speeds;
        if (init.contains("perturbation")) {
            const auto& pert = init.at("perturbation");
            const double alpha0 = pert.value("alpha0", 0.0);
            const int modes = pert.value("modes", 24);
            std::mt19937_64 rng(pert.value("seed", cfg.value("seed", 0u)));
            if (alpha0 > 0.0) {
                HydroField eps = random_smooth_field(g, modes, 1.0, 1.0, rng);
                Spectral sp(g);
                const double s = alpha0 / x_norm(eps, sp);
                f = f + s * eps;
            }
        }
        return f;
    }
    if (type == "file") {
        can_track = false;
        return read_field_csv(init.at("path").get<std::string>());
    }
    throw ConfigError("unknown initial type: " + type);
}

}  // namespace

ExperimentResult run_evolve_experiment(json cfg) {
    check_outputs(cfg);
    TrackedRunParams prm;
    prm.nl = nonlinearity_from_json(cfg.at("nonlinearity"));
    prm.grid = grid_from_json(cfg.at("grid"));
    bool can_track = true;
    prm.initial = initial_from_json(cfg, prm.nl, prm.grid, prm.guess, prm.c_star,
                                    can_track);

    const auto& evo = cfg.at("evolution");
    prm.evo.t_end = evo.at("t_end").get<double>();
    prm.evo.dt = evo.value("dt", 0.0);
    prm.evo.cfl_lambda = evo.value("cfl_lambda", 0.2);
    prm.evo.dealias = evo.value("dealias", false);
    prm.evo.snapshot_every = evo.value("snapshot_every", 0);

    if (cfg.contains("tracking")) {
        const auto& tr = cfg.at("tracking");
        prm.tracking = tr.value("enabled", false) && can_track;
        prm.tau = tr.value("tau", 0.0);
        prm.tau0 = tr.value("tau0", 0.0);
    }

    TrackedRunResult run = run_tracked_evolution(prm);

    const int N = prm.guess.size();
    const std::string csv = output_path(cfg, "csv_path");
    if (!csv.empty()) {
        CsvWriter w(csv);
        w.header(diagnostics_columns(N));
        for (const auto& rec : run.series) w.row(diagnostics_values(rec, N));
        w.flush();
    }
    const std::string field_csv = output_path(cfg, "field_csv_path");
    if (!field_csv.empty()) write_field_csv(field_csv, run.final_field);

    const auto& first = run.series.front();
    const auto& last = run.series.back();
    json report{{"kind", "evolve"},
                {"snapshots", run.series.size()},
                {"energy_drift", std::abs(last.E - first.E) / std::max(1e-300, std::abs(first.E))},
                {"momentum_drift", std::abs(last.p - first.p) / std::max(1e-300, std::abs(first.p))},
                {"track_ok", run.track_ok}};
    if (!run.track_ok) report["track_error"] = run.track_error;
    emit_report(cfg, report);
    return {0, report};
}

// ------------------------------------------------------- chain-stability ---

ExperimentResult run_chain_stability_experiment(json cfg) {
    check_outputs(cfg);
    TrackedRunParams prm;
    prm.nl = nonlinearity_from_json(cfg.at("nonlinearity"));
    prm.grid = grid_from_json(cfg.at("grid"));

    std::vector<double> speeds = cfg.at("speeds").get<std::vector<double>>();
    validate_ordered_speeds(speeds);
    std::vector<double> positions;
    if (cfg.contains("positions")) {
        positions = cfg.at("positions").get<std::vector<double>>();
    } else {
        const double gap = cfg.at("gap").get<double>();
        const int N = static_cast<int>(speeds.size());
        for (int k = 0; k < N; ++k) positions.push_back((k - 0.5 * (N - 1)) * gap);
    }
    ChainSpec spec{speeds, positions};
    const double L0 = spec.min_gap();
    const double alpha0 = cfg.value("alpha0", 1e-3);

    HydroField chain = build_chain(spec, prm.nl, prm.grid);
    std::mt19937_64 rng(cfg.value("seed", 0u));
    HydroField eps = random_smooth_field(prm.grid, cfg.value("perturbation_modes", 24),
                                         1.0, 1.0, rng);
    Spectral sp(prm.grid);
    prm.initial = chain + (alpha0 / x_norm(eps, sp)) * eps;

    const auto& evo = cfg.at("evolution");
    prm.evo.t_end = evo.at("t_end").get<double>();
    prm.evo.dt = evo.value("dt", 0.0);
    prm.evo.cfl_lambda = evo.value("cfl_lambda", 0.2);
    prm.evo.dealias = evo.value("dealias", false);
    prm.evo.snapshot_every = evo.value("snapshot_every", 256);
    prm.tracking = true;
    prm.guess = spec;
    prm.c_star = speeds;
    prm.tau = cfg.value("tau", 0.0);
    prm.tau0 = cfg.value("tau0", 0.0);

    TrackedRunResult run = run_tracked_evolution(prm);

    double sigma_star = 1e300;
    for (std::size_t k = 1; k < speeds.size(); ++k)
        sigma_star = std::min(sigma_star, speeds[k] - speeds[k - 1]);

    std::vector<double> times;
    for (const auto& rec : run.series) times.push_back(rec.t);
    StabilityReport stab = stability_report(times, run.distances, run.track, alpha0,
                                            L0, run.tau0, true);
    MonotonicityReport mono =
        monotonicity_report(run.series, sigma_star, run.tau0, cfg.value("tolerance", 1e-6));

    const int N = spec.size();
    const std::string csv = output_path(cfg, "csv_path");
    if (!csv.empty()) {
        CsvWriter w(csv);
        w.header(diagnostics_columns(N));
        for (const auto& rec : run.series) w.row(diagnostics_values(rec, N));
        w.flush();
    }

    json report{{"kind", "chain-stability"},
                {"track_ok", run.track_ok},
                {"sup_distance", stab.sup_distance},
                {"ratio", stab.ratio},
                {"sup_rates", stab.sup_rates},
                {"alpha0", alpha0},
                {"L0", L0},
                {"tau", run.tau},
                {"tau0", run.tau0},
                {"min_increment_ptilde", mono.min_increment},
                {"p1_max_drift", mono.p1_max_drift},
                {"G_max_increase", mono.g_max_increase},
                {"gap_slack", mono.gap_slack},
                {"envelope_rate", mono.envelope_rate},
                {"rate_flag", mono.rate_flag},
                {"pass_ptilde", mono.pass_ptilde},
                {"pass_G", mono.pass_G},
                {"pass_gap", mono.pass_gap}};
    emit_report(cfg, report);
    const bool ok = run.track_ok && mono.pass_ptilde && mono.pass_G && mono.pass_gap;
    return {ok ? 0 : 1, report};
}

// -------------------------------------------------------- verify-appendix ---

ExperimentResult run_verify_appendix_experiment(json cfg) {
    check_outputs(cfg);
    const Nonlinearity nl = cfg.contains("nonlinearity")
                                ? nonlinearity_from_json(cfg.at("nonlinearity"))
                                : Nonlinearity::gross_pitaevskii();
    const int draws = cfg.value("draws", 10000);
    std::mt19937_64 rng(cfg.value("seed", 0u));

    // Lemma on the exponential cross-term, random draws
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int failures = 0;
    for (int i = 0; i < draws; ++i) {
        const double a = -10.0 + 20.0 * unif(rng);
        const double b = a + 0.5 + 30.0 * unif(rng);
        const double nu_a = 0.05 + 4.0 * unif(rng);
        const double nu_b = 0.05 + 4.0 * unif(rng);
        const double ps[5] = {1.0, 1.5, 2.0, 3.0,
                              std::numeric_limits<double>::infinity()};
        const double p = ps[static_cast<int>(5.0 * unif(rng)) % 5];
        if (!crossterm_bound_check(a, b, nu_a, nu_b, p).pass) ++failures;
    }

    const std::vector<double> Ls =
        cfg.contains("Ls") ? cfg.at("Ls").get<std::vector<double>>()
                           : std::vector<double>{40.0, 60.0, 80.0};
    const std::vector<double> speeds =
        cfg.contains("speeds") ? cfg.at("speeds").get<std::vector<double>>()
                               : std::vector<double>{1.2, 1.3};

    DecayFit s22 = polynomial_crossterm_check(nl, speeds,
                                              CoupledPolynomial::symmetric(2, 2), 2.0, Ls);
    DecayFit b2 = polynomial_crossterm_check(nl, speeds,
                                             CoupledPolynomial::b_preset(2), 2.0, Ls);
    DecayFit fres = fexpansion_residual_decay(nl, speeds, Ls);

    ExpansionParams eprm;
    eprm.seed = cfg.value("seed", 7u);
    ExpansionReport exp_rep = expansion_check(nl, eprm);

    const bool pass = failures == 0 && s22.pass && b2.pass && fres.pass &&
                      exp_rep.pass_rates && exp_rep.pass_cubic;

    json report{{"kind", "verify-appendix"},
                {"crossterm_draws", draws},
                {"crossterm_failures", failures},
                {"s22_rate", s22.rate},
                {"b2_rate", b2.rate},
                {"fexpansion_rate", fres.rate},
                {"e_residuals", exp_rep.e_residuals},
                {"pk_residuals", exp_rep.pk_residuals},
                {"e_rate", exp_rep.e_rate},
                {"pk_rate", exp_rep.pk_rate},
                {"taylor_remainders", exp_rep.taylor_remainders},
                {"cubic_exponent", exp_rep.cubic_exponent},
                {"split_residual", exp_rep.split_residual},
                {"split_budget", exp_rep.split_budget},
                {"pass", pass}};
    emit_report(cfg, report);
    return {pass ? 0 : 1, report};
}

// -------------------------------------------------------------- dispatch ---

ExperimentResult run_experiment(const json& config) {
    if (!config.is_object() || !config.contains("kind"))
        throw ConfigError("experiment config needs a \"kind\" field");
    const std::string kind = config.at("kind").get<std::string>();
    if (kind == "profile") return run_profile_experiment(config);
    if (kind == "spectrum") return run_spectrum_experiment(config);
    if (kind == "evolve") return run_evolve_experiment(config);
    if (kind == "chain-stability") return run_chain_stability_experiment(config);
    if (kind == "verify-appendix") return run_verify_appendix_experiment(config);
    throw ConfigError("unknown experiment kind: " + kind);
}

int run_sweep(const std::vector<std::string>& config_paths) {
    int max_threads = 2;
    if (const char* env = std::getenv("DARKSOL_THREADS"))
        max_threads = std::max(1, std::atoi(env));
    std::atomic<std::size_t> next{0};
    std::atomic<int> worst{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= config_paths.size()) break;
            try {
                std::ifstream in(config_paths[i]);
                if (!in) throw ConfigError("cannot open " + config_paths[i]);
                json cfg = json::parse(in);
                const ExperimentResult res = run_experiment(cfg);
                int cur = worst.load();
                while (res.exit_code > cur &&
                       !worst.compare_exchange_weak(cur, res.exit_code)) {}
            } catch (const std::exception& e) {
                std::fprintf(stderr, "sweep: %s: %s\n", config_paths[i].c_str(), e.what());
                worst.store(2);
            }
        }
    };
    std::vector<std::thread> pool;
    const int nthreads = std::min<std::size_t>(max_threads, config_paths.size());
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return worst.load();
}

}  // namespace darksol
