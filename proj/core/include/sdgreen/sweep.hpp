#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdgreen/report.hpp"

namespace sdgreen {

/// Named x* positions. center-S sits at the middle of the coarse region,
/// mid-X / mid-Y at the middle of the respective layer, center-XY in the
/// corner layer (allowed only with an explicit override, since the corner is
/// excluded from the point bound and the scaling statement). node:i,j picks
/// an explicit interior node.
struct XStarSelector {
    std::string spec;
    /// Resolves to node indices on an N mesh; throws on malformed spec or a
    /// non-interior node.
    std::pair<int, int> resolve(int n) const;
    bool is_corner_selector() const { return spec == "center-XY"; }
};

struct SweepSpec {
    std::vector<int> n_values = {16, 32, 64, 128};
    std::vector<double> eps_values = {1e-4, 1e-6, 1e-8};
    std::vector<std::string> xstar_selectors = {"center-S", "mid-X", "mid-Y"};
    std::vector<double> k_grid = {1, 2, 4, 8, 16, 32, 64};

    // physical/discretization parameters shared by all points
    double b1 = 2.0, b2 = 3.0, c = 1.0;
    double rho = 2.5;
    std::optional<double> c_star;
    double k = 4.0;
    double big_k = 1.0;

    std::uint64_t seed = kDefaultSeed;
    bool allow_xy = false;
    int coercivity_trials = 100;
    int identity_trials = 20;
    int threads = 0;  // 0 = SDFEM_THREADS env or hardware concurrency

    void validate() const;  // throws std::invalid_argument
};

struct RatioRow {
    double eps = 0.0;
    std::string xstar;
    int n = 0;
    double r_n = 0.0;
    double r_over_baseline = 0.0;  // vs N=32; 0 when no baseline
};

struct SweepResult {
    std::vector<NormReport> rows;       // sorted by (N, eps, selector)
    std::vector<RatioRow> ratios;       // per (eps, selector) group
    std::vector<CheckReport> theorem_reports;
    bool all_passed = false;
};

/// Runs the full cross product. Each (N, eps) system is assembled and
/// factorized once and shared by its x* points. Points are dispatched to a
/// worker pool; outputs are position-keyed, so results do not depend on the
/// thread count. Per-point failures are recorded in the row status and the
/// sweep continues.
SweepResult run_sweep(const SweepSpec& spec);

/// All measurements for one x* on an already-factorized system; the building
/// block of run_sweep, also used directly by the CLI `green` command.
NormReport evaluate_point(const SdfemSystem& system, const std::string& selector,
                          const SweepSpec& spec);

/// Writes sweep_results.csv, ratio_summary.csv and the plot-ready two-column
/// files under out_dir (created if missing).
void write_sweep_outputs(const SweepResult& result, const std::string& out_dir);

/// Worker-count resolution: explicit > SDFEM_THREADS > hardware.
int resolve_threads(int requested, int num_tasks);

}  // namespace sdgreen
