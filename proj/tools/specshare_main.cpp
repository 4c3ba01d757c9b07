// Command-line front end: solve one parameter point, sweep a parameter,
// emit a figure dataset, or run the verification suites.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "specshare/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadInput = 2;

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw specshare::config_error("cannot write output file '" + path + "'");
    return file;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equilibrium solver for the two-provider spectrum-sharing game"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string mode_text = "auto";
    std::string dataset;
    std::string selection_text;
    std::string sweep_param;
    double sweep_lo = 0.0, sweep_hi = 1.0;
    int sweep_steps = 2;
    std::optional<double> fig_lo, fig_hi;
    std::optional<int> fig_steps;
    int grid_points = 400;
    std::uint64_t seed = 0x5eedu;
    int disagreement_points = 0;

    auto* solve = app.add_subcommand("solve", "solve the configured parameter point");
    solve->add_option("--config", config_path, "parameter file")->required();
    solve->add_option("--out", out_path, "output CSV path (default: stdout)");
    solve->add_option("--mode", mode_text, "auto|base|corner|outside");
    solve->add_option("--selection", selection_text,
                      "corner price selection: lower|upper|midpoint|<number>");
    solve->add_option("--grid-points", disagreement_points,
                      "override the disagreement search grid size");

    auto* sweep = app.add_subcommand("sweep", "sweep one parameter and solve each point");
    sweep->add_option("--config", config_path, "parameter file")->required();
    sweep->add_option("--out", out_path, "output CSV path (default: stdout)");
    sweep->add_option("--param", sweep_param, "parameter name (or 'delta')")->required();
    sweep->add_option("--lo", sweep_lo, "sweep lower bound")->required();
    sweep->add_option("--hi", sweep_hi, "sweep upper bound")->required();
    sweep->add_option("--steps", sweep_steps, "number of sweep points")->required();
    sweep->add_option("--mode", mode_text, "auto|base|corner|outside");
    sweep->add_option("--selection", selection_text,
                      "corner price selection: lower|upper|midpoint|<number>");
    sweep->add_option("--grid-points", disagreement_points,
                      "override the disagreement search grid size");

    auto* figure = app.add_subcommand("figure", "emit a named sweep dataset as CSV");
    figure->add_option("--config", config_path, "parameter file")->required();
    figure->add_option("--out", out_path, "output CSV path (default: stdout)");
    std::string dataset_help = "dataset id; one of:";
    for (const auto& preset : specshare::figure_presets())
        dataset_help += " " + preset.dataset;
    figure->add_option("--dataset", dataset, dataset_help)->required();
    figure->add_option("--lo", [&fig_lo](const CLI::results_t& r) {
        fig_lo = std::stod(r[0]); return true; }, "override sweep lower bound");
    figure->add_option("--hi", [&fig_hi](const CLI::results_t& r) {
        fig_hi = std::stod(r[0]); return true; }, "override sweep upper bound");
    figure->add_option("--steps", [&fig_steps](const CLI::results_t& r) {
        fig_steps = std::stoi(r[0]); return true; }, "override sweep point count");
    figure->add_option("--grid-points", disagreement_points,
                       "override the disagreement search grid size");

    auto* verify = app.add_subcommand("verify", "run oracle and identity checks");
    verify->add_option("--config", config_path, "parameter file")->required();
    verify->add_option("--out", out_path, "also write the report as CSV");
    verify->add_option("--grid-points", grid_points, "oracle grid points per axis");
    verify->add_option("--seed", seed, "seed for the randomized identity draws");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        specshare::ExperimentConfig cfg = specshare::load_config(config_path);
        if (!selection_text.empty())
            cfg.selection = specshare::selection_from_string(selection_text);

        specshare::DisagreementConfig dcfg;
        dcfg.i_l_points = 3001;
        dcfg.i_f_points = 97;
        dcfg.refine_passes = 30;
        if (disagreement_points > 0) dcfg.i_l_points = disagreement_points;

        std::ofstream file;
        if (solve->parsed()) {
            const specshare::SolveMode mode = specshare::solve_mode_from_string(mode_text);
            const specshare::PointResult point =
                specshare::solve_point(cfg.params, mode, cfg, dcfg);
            specshare::write_point(open_output(file, out_path), point, true);
            if (!point.bounded)
                std::cerr << "note: spectrum objective unbounded above; no maximizer\n";
        } else if (sweep->parsed()) {
            const specshare::SolveMode mode = specshare::solve_mode_from_string(mode_text);
            specshare::run_sweep({sweep_param, sweep_lo, sweep_hi, sweep_steps}, mode, cfg,
                                 dcfg, open_output(file, out_path));
        } else if (figure->parsed()) {
            specshare::run_figure(dataset, cfg, dcfg, open_output(file, out_path), fig_lo,
                                  fig_hi, fig_steps);
        } else if (verify->parsed()) {
            specshare::VerifyOptions opts;
            opts.grid_points = grid_points;
            opts.seed = seed;
            const auto checks = specshare::run_verify(cfg, opts);
            if (!out_path.empty())
                specshare::write_verify_csv(open_output(file, out_path), checks);
            if (!specshare::print_verify_report(std::cout, checks))
                return kExitVerifyFailed;
        }
    } catch (const specshare::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
    return kExitOk;
}
