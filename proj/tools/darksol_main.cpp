#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "darksol/experiments.hpp"

namespace {

using darksol::json;

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw darksol::ConfigError("cannot open config " + path);
    return json::parse(in);
}

// Flags seed the config; an explicit --config file overrides them.
json merged_config(const json& from_flags, const std::string& config_path) {
    json cfg = from_flags;
    if (!config_path.empty()) {
        json file_cfg = load_config(config_path);
        cfg.merge_patch(file_cfg);
    }
    return cfg;
}

std::pair<int, double> parse_grid_arg(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw darksol::ConfigError("--grid expects n,length");
    return {std::stoi(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

void print_verdicts(const json& report) {
    if (report.contains("pass_ptilde")) {
        std::printf("[%s] monotonicity of localized momenta\n",
                    report["pass_ptilde"].get<bool>() ? "PASS" : "FAIL");
        std::printf("[%s] almost-decrease of G\n",
                    report["pass_G"].get<bool>() ? "PASS" : "FAIL");
        std::printf("[%s] gap growth\n", report["pass_gap"].get<bool>() ? "PASS" : "FAIL");
    }
    if (report.contains("pass"))
        std::printf("[%s] appendix estimates\n",
                    report["pass"].get<bool>() ? "PASS" : "FAIL");
    if (report.contains("sup_distance"))
        std::printf("sup ||Q - R_{c*,a(t)}||_X = %.6g (ratio %.3g)\n",
                    report["sup_distance"].get<double>(), report["ratio"].get<double>());
    if (report.contains("xi_c"))
        std::printf("xi_c = %.12g  nu_c = %.12g  p = %.12g  dp/dc = %.12g\n",
                    report["xi_c"].get<double>(), report["nu_c"].get<double>(),
                    report["p"].get<double>(), report["dp_dc"].get<double>());
    if (report.contains("l_c"))
        std::printf("floor = %.12g  l_c = %.12g\n", report["floor"].get<double>(),
                    report["l_c"].get<double>());
    if (report.contains("energy_drift"))
        std::printf("relative drift: E %.3g, p %.3g\n",
                    report["energy_drift"].get<double>(),
                    report["momentum_drift"].get<double>());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"darksol: numerical laboratory for dark-soliton chains of the "
                 "1D defocusing NLS in hydrodynamical variables"};
    app.require_subcommand(0, 1);

    std::vector<std::string> sweep_paths;
    app.add_option("--sweep", sweep_paths,
                   "run several experiment configs across worker threads "
                   "(DARKSOL_THREADS caps parallelism)");

    std::string config_path, nl_json, grid_arg, out_csv, out_json;
    double c_value = 1.0;
    int m_eigs = 6;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config (overrides flags)");
        sub->add_option("--out", out_csv, "CSV output path");
        sub->add_option("--json", out_json, "JSON report path");
    };

    CLI::App* prof = app.add_subcommand("profile", "soliton profile at speed c");
    prof->add_option("--nl", nl_json, "nonlinearity JSON");
    prof->add_option("--c", c_value, "speed in (0, c_s)");
    prof->add_option("--grid", grid_arg, "n,length");
    add_common(prof);

    CLI::App* spec = app.add_subcommand("spectrum", "low spectrum of H_c");
    spec->add_option("--nl", nl_json, "nonlinearity JSON");
    spec->add_option("--c", c_value, "speed in (0, c_s)");
    spec->add_option("--grid", grid_arg, "n,length");
    spec->add_option("--m", m_eigs, "number of eigenvalues");
    add_common(spec);

    CLI::App* evolve = app.add_subcommand("evolve", "time integration run");
    add_common(evolve);

    CLI::App* chain = app.add_subcommand("chain-stability",
                                         "perturbed ordered-chain experiment");
    add_common(chain);

    CLI::App* verify = app.add_subcommand("verify-appendix",
                                          "cross-term and expansion estimates");
    int draws = 10000;
    unsigned seed = 0;
    verify->add_option("--draws", draws, "random draws for the cross-term bound");
    verify->add_option("--seed", seed, "rng seed");
    add_common(verify);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!sweep_paths.empty()) return darksol::run_sweep(sweep_paths);

        json flags;
        if (!nl_json.empty()) flags["nonlinearity"] = json::parse(nl_json);
        if (!grid_arg.empty()) {
            const auto [n, len] = parse_grid_arg(grid_arg);
            flags["grid"] = {{"n", n}, {"length", len}};
        }
        if (!out_csv.empty()) flags["output"]["csv_path"] = out_csv;
        if (!out_json.empty()) flags["output"]["json_path"] = out_json;

        darksol::ExperimentResult result;
        if (prof->parsed()) {
            flags["kind"] = "profile";
            flags["c"] = c_value;
            result = darksol::run_experiment(merged_config(flags, config_path));
        } else if (spec->parsed()) {
            flags["kind"] = "spectrum";
            flags["c"] = c_value;
            flags["m"] = m_eigs;
            result = darksol::run_experiment(merged_config(flags, config_path));
        } else if (evolve->parsed()) {
            flags["kind"] = "evolve";
            result = darksol::run_experiment(merged_config(flags, config_path));
        } else if (chain->parsed()) {
            flags["kind"] = "chain-stability";
            result = darksol::run_experiment(merged_config(flags, config_path));
        } else if (verify->parsed()) {
            flags["kind"] = "verify-appendix";
            flags["draws"] = draws;
            flags["seed"] = seed;
            result = darksol::run_experiment(merged_config(flags, config_path));
        } else {
            std::cout << app.help() << std::endl;
            return 0;
        }
        print_verdicts(result.report);
        return result.exit_code;
    } catch (const darksol::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
