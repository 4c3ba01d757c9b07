#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "specshare/bargaining.hpp"
#include "specshare/disagreement.hpp"
#include "specshare/market.hpp"
#include "specshare/oracle.hpp"
#include "specshare/outside.hpp"

namespace specshare {

/// Which solver family a run uses; auto_detect picks base for |delta| < 1
/// and corner otherwise (outside is always explicit).
enum class SolveMode { auto_detect, base, corner, outside };

const char* to_string(SolveMode m);
SolveMode solve_mode_from_string(const std::string& text);

/** Parameter file plus experiment-level extras: an optional disagreement
 * override (keys d_l, d_f, both required together) and a corner price
 * selection (key price_selection: lower|upper|midpoint|<number>).
 */
struct ExperimentConfig {
    MarketParams params;
    std::optional<DisagreementPoint> d_override;
    PriceSelection selection;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig config_from_string(const std::string& text);

/// One parameter swept over an inclusive range; `param` is any MarketParams
/// key or "delta" (which moves v_l while holding v_f).
struct SweepSpec {
    std::string param;
    double lo = 0.0;
    double hi = 1.0;
    int steps = 2;
};

/// Returns params with the named parameter set; config_error for unknown names.
MarketParams apply_param(const MarketParams& params, const std::string& name, double value);

/// Everything solved at one parameter point, ready for serialization.
struct PointResult {
    MarketParams params;
    SolveMode mode = SolveMode::base;
    DisagreementPoint d;
    ExistenceReport report;
    bool bounded = true;
    std::optional<double> i_l_star; ///< outside-mode spectrum optimum
    std::vector<EquilibriumSolution> solutions;
};

PointResult solve_point(const MarketParams& params, SolveMode mode,
                        const ExperimentConfig& cfg, const DisagreementConfig& dcfg);

/// Column names of the uniform output row (shared by solve, sweep, figure).
const std::vector<std::string>& row_header();

/// Emits header + one row per solution (or one empty-solution row when none).
void write_point(std::ostream& out, const PointResult& point, bool with_header);

/** Sweeps `spec.param`, solving each point and emitting uniform rows.
 * Disagreement points are recomputed where the swept parameter can move
 * them and reused otherwise.
 */
void run_sweep(const SweepSpec& spec, SolveMode mode, const ExperimentConfig& cfg,
               const DisagreementConfig& dcfg, std::ostream& out);

/// Preset sweep behind a figure dataset id.
struct FigureSpec {
    std::string dataset;
    SweepSpec sweep;
    SolveMode mode = SolveMode::base;
};

const std::vector<FigureSpec>& figure_presets();

/** Runs the preset sweep for `dataset` (config_error for unknown ids), with
 * optional range/step overrides.
 */
void run_figure(const std::string& dataset, const ExperimentConfig& cfg,
                const DisagreementConfig& dcfg, std::ostream& out,
                std::optional<double> lo = {}, std::optional<double> hi = {},
                std::optional<int> steps = {});

struct VerifyOptions {
    int grid_points = 400;
    std::uint64_t seed = 0x5eedu;
    int draws = 1000;
    ProbeGrid probe{-1.0, 4.0, 2001}; ///< lo/hi recentred around c at run time
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    double threshold = 0.0;
    std::string detail;
};

/** Compares a candidate optimum against the brute-force grid: the candidate
 * must beat every grid point up to the grid tolerance and sit within one
 * cell of the grid argmax. `residual` reports the worst violation.
 */
bool oracle_agrees(const MarketParams& params, const DisagreementPoint& d,
                   const Allocation& candidate, double candidate_value,
                   const GridSpec& grid, Stage2Mode mode, double* residual = nullptr);

/// Identity suites plus closed-form-vs-oracle and Nash certification checks
/// for the configured parameter point. All thresholds are fixed here.
std::vector<CheckResult> run_verify(const ExperimentConfig& cfg, const VerifyOptions& opts);

/// Human-readable summary; returns true when every check passed.
bool print_verify_report(std::ostream& out, const std::vector<CheckResult>& checks);

/// Same report as CSV rows: name, pass, residual, threshold, detail.
void write_verify_csv(std::ostream& out, const std::vector<CheckResult>& checks);

} // namespace specshare
