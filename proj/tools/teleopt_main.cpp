#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "teleopt/io.hpp"
#include "teleopt/selftest.hpp"
#include "teleopt/version.hpp"

// Command-line front end: evaluate single teleportation runs, baseline curves,
// full optimization sweeps, and curves rebuilt from the bundled coefficient
// tables. All randomness flows from the --seed flag; identical invocations
// produce byte-identical CSV output.

namespace fs = std::filesystem;
using namespace teleopt;

namespace {

std::string default_out_dir() {
    const char* env = std::getenv("TELEOPT_OUT_DIR");
    return env ? env : ".";
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
    if (!dir.empty() && dir != ".") fs::create_directories(dir);
}

std::vector<double> uniform_grid(int n) {
    std::vector<double> ps(n);
    for (int i = 0; i < n; ++i) ps[i] = static_cast<double>(i) / (n - 1);
    return ps;
}

std::string scenario_stem(const SweepConfig& cfg) {
    return to_string(cfg.model) + "_" + to_string(cfg.placement) + "_" + to_string(cfg.variant);
}

int cmd_simulate(const std::string& noise, const std::string& placement,
                 const std::string& variant, double p, double alpha, double beta, double phi,
                 double theta, double lambda, bool from_table) {
    const NoiseConfig nc{parse_noise_model(noise), p, parse_placement(placement)};
    ProtocolParams params;
    const Variant v = parse_variant(variant);
    switch (v) {
        case Variant::BellBaseline: params = bell_baseline(); break;
        case Variant::RotatedBasis: params = rotated_basis({phi, theta, lambda}); break;
        case Variant::FullyAdaptive:
            if (from_table) {
                params = reconstruct_params(load_reference_table(nc.model), p);
            } else {
                params = bell_baseline();
                params.meas = {phi, theta, lambda};
                params.variant = Variant::FullyAdaptive;
            }
            break;
    }
    const TeleportOutcome out = teleport({alpha, beta}, params, nc);
    std::cout << "noise=" << to_string(nc.model) << " placement=" << to_string(nc.placement)
              << " variant=" << to_string(v) << " p=" << format_real(p) << '\n'
              << "input alpha=" << format_real(alpha) << " beta=" << format_real(beta) << '\n';
    for (int i = 0; i < 4; ++i)
        std::cout << "outcome " << i << ": probability=" << format_real(out.probabilities[i])
                  << " fidelity=" << format_real(out.fidelities[i]) << '\n';
    std::cout << "total fidelity=" << format_real(out.total) << '\n';
    return 0;
}

int cmd_baseline(const std::string& noise, const std::string& placement, int p_points,
                 int grid_n, const std::string& out_path) {
    const FidelityGrid grid = FidelityGrid::midpoint(grid_n, grid_n);
    const auto curve =
        baseline_curve(parse_noise_model(noise), parse_placement(placement),
                       uniform_grid(p_points), grid);
    write_baseline_csv(curve, out_path);
    std::cout << "wrote " << out_path << " (" << curve.size() << " points)\n";
    return 0;
}

int cmd_sweep(SweepConfig cfg) {
    ensure_dir(cfg.out_dir);
    const ScenarioResult result = run_sweep(cfg);
    const std::string stem = scenario_stem(cfg);
    const std::string sweep_path = join(cfg.out_dir, stem + "_sweep.csv");
    const std::string coeff_path = join(cfg.out_dir, stem + "_coeffs.csv");
    write_csv(result, sweep_path);
    write_table_csv(result.fitted, coeff_path, /*with_residuals=*/true);
    write_manifest(result, join(cfg.out_dir, stem + "_manifest.txt"));
    std::cout << "wrote " << sweep_path << '\n' << "wrote " << coeff_path << '\n';

    // comparison against the published table, when one exists for this model
    try {
        const CoefficientTable table = load_reference_table(cfg.model);
        const FidelityGrid grid = FidelityGrid::midpoint(cfg.eval_alpha, cfg.eval_beta);
        const auto rows = compare_curves(result, table, grid);
        const std::string cmp_csv = join(cfg.out_dir, stem + "_compare.csv");
        const std::string cmp_txt = join(cfg.out_dir, stem + "_compare.txt");
        write_compare_csv(rows, cmp_csv);
        write_compare_text(rows, cmp_txt);
        std::cout << "wrote " << cmp_csv << '\n';
    } catch (const std::invalid_argument&) {
        // no published table for this model
    }
    std::cout << "sweep finished in " << format_real(result.duration_seconds) << " s\n";
    return 0;
}

int cmd_tables(const std::string& noise, bool have_p, double p) {
    const CoefficientTable table = load_reference_table(parse_noise_model(noise));
    if (have_p) {
        const ParamVector v = table_at(table, p);
        std::cout << "parameter,value_at_p\n";
        for (int i = 0; i < 27; ++i)
            std::cout << param_names()[i] << ',' << format_real(v[i]) << '\n';
    } else {
        std::cout << "parameter,p3,p2,p1,c0\n";
        for (int i = 0; i < 27; ++i) {
            std::cout << param_names()[i];
            for (double c : table.rows[i]) std::cout << ',' << format_real(c);
            std::cout << '\n';
        }
    }
    return 0;
}

int cmd_reconstruct(const std::string& noise, const std::string& placement, int p_points,
                    int grid_n, const std::string& out_path) {
    const NoiseModel model = parse_noise_model(noise);
    const CoefficientTable table = load_reference_table(model);
    const FidelityGrid grid = FidelityGrid::midpoint(grid_n, grid_n);
    const auto rows =
        reconstruct_curve(table, model, parse_placement(placement), uniform_grid(p_points), grid);
    write_reconstruct_csv(rows, out_path);
    std::cout << "wrote " << out_path << " (" << rows.size() << " points)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"noisy-teleportation simulator and protocol optimizer"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "evaluate one teleportation run");
    std::string s_noise = "bitflip", s_place = "alice", s_variant = "bell";
    double s_p = 0.0, s_alpha = 0.0, s_beta = 0.0, s_phi = 0.0, s_theta = 0.0, s_lambda = 0.0;
    bool s_from_table = false;
    sim->add_option("--noise", s_noise, "bitflip|phaseflip|depolarizing|amplitude_damping|ad");
    sim->add_option("--placement", s_place, "input|alice|both");
    sim->add_option("--variant", s_variant, "bell|rotated|adaptive");
    sim->add_option("--p", s_p, "noise strength in [0,1]")->check(CLI::Range(0.0, 1.0));
    sim->add_option("--alpha", s_alpha, "input state angle in [0,pi]");
    sim->add_option("--beta", s_beta, "input state phase in [0,2pi)");
    sim->add_option("--phi", s_phi, "measurement rotation phi (rotated/adaptive)");
    sim->add_option("--theta", s_theta, "measurement rotation theta");
    sim->add_option("--lambda", s_lambda, "measurement rotation lambda");
    sim->add_flag("--from-table", s_from_table,
                  "take adaptive parameters from the bundled table at p");

    // baseline
    auto* base = app.add_subcommand("baseline", "Bell-baseline fidelity curve");
    std::string b_noise = "bitflip", b_place = "alice";
    std::string b_out = join(default_out_dir(), "baseline.csv");
    int b_points = 50, b_grid = 64;
    base->add_option("--noise", b_noise, "noise model");
    base->add_option("--placement", b_place, "noise placement");
    base->add_option("--p-points", b_points, "points in the p grid")->check(CLI::Range(2, 100000));
    base->add_option("--grid", b_grid, "evaluation grid size n (n x n)")
        ->check(CLI::Range(1, 4096));
    base->add_option("--out", b_out, "output CSV path");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "optimize a full noise sweep");
    std::string w_config, w_out = default_out_dir();
    std::string w_noise, w_place, w_variant;
    int w_points = -1, w_iterations = -1;
    int64_t w_seed = -1;
    sweep->add_option("--config", w_config, "key=value config file");
    sweep->add_option("--out", w_out, "output directory");
    sweep->add_option("--noise", w_noise, "override: noise model");
    sweep->add_option("--placement", w_place, "override: placement");
    sweep->add_option("--variant", w_variant, "override: bell|rotated|adaptive");
    sweep->add_option("--p-points", w_points, "override: points in the p grid");
    sweep->add_option("--iterations", w_iterations, "override: optimizer iterations per p");
    sweep->add_option("--seed", w_seed, "override: master seed");

    // tables
    auto* tab = app.add_subcommand("tables", "show a bundled coefficient table");
    std::string t_noise = "bitflip";
    double t_p = 0.0;
    tab->add_option("--noise", t_noise, "bitflip|amplitude_damping|depolarizing");
    auto* t_p_opt = tab->add_option("--p", t_p, "evaluate rows at this strength")
                        ->check(CLI::Range(0.0, 1.0));

    // reconstruct
    auto* rec = app.add_subcommand("reconstruct", "fidelity curve from the bundled table");
    std::string r_noise = "bitflip", r_place = "alice";
    std::string r_out = join(default_out_dir(), "reconstruct.csv");
    int r_points = 50, r_grid = 64;
    rec->add_option("--noise", r_noise, "noise model with a bundled table");
    rec->add_option("--placement", r_place, "noise placement");
    rec->add_option("--p-points", r_points, "points in the p grid")->check(CLI::Range(2, 100000));
    rec->add_option("--grid", r_grid, "evaluation grid size n (n x n)")->check(CLI::Range(1, 4096));
    rec->add_option("--out", r_out, "output CSV path");

    // selftest
    auto* st = app.add_subcommand("selftest", "run the invariant suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim)
            return cmd_simulate(s_noise, s_place, s_variant, s_p, s_alpha, s_beta, s_phi, s_theta,
                                s_lambda, s_from_table);
        if (*base) return cmd_baseline(b_noise, b_place, b_points, b_grid, b_out);
        if (*sweep) {
            SweepConfig cfg;
            if (!w_config.empty()) cfg = parse_config_file(w_config);
            if (sweep->count("--out")) cfg.out_dir = w_out;
            else if (w_config.empty() || cfg.out_dir == ".") cfg.out_dir = w_out;
            if (!w_noise.empty()) apply_config_entry(cfg, "noise", w_noise);
            if (!w_place.empty()) apply_config_entry(cfg, "placement", w_place);
            if (!w_variant.empty()) apply_config_entry(cfg, "variant", w_variant);
            if (w_points > 0) apply_config_entry(cfg, "p_points", std::to_string(w_points));
            if (w_iterations >= 0)
                apply_config_entry(cfg, "iterations", std::to_string(w_iterations));
            if (w_seed >= 0) apply_config_entry(cfg, "seed", std::to_string(w_seed));
            return cmd_sweep(cfg);
        }
        if (*tab) return cmd_tables(t_noise, t_p_opt->count() > 0, t_p);
        if (*rec) return cmd_reconstruct(r_noise, r_place, r_points, r_grid, r_out);
        if (*st) return run_selftest(std::cout) ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
