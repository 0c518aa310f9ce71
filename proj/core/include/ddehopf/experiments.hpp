#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ddehopf/expansion.hpp"
#include "ddehopf/noise_correction.hpp"
#include "ddehopf/spectrum.hpp"
#include "ddehopf/trajectory.hpp"

namespace ddehopf {

struct EnsembleOptions {
    std::size_t n_trials = 500;
    std::size_t n_steps = 10000;
    double dt = 0.1;
    std::uint64_t master_seed = 12345;
    HistoryInit history = HistoryInit::constant(0.01);
    std::size_t workers = 0;  // 0 = default_workers()

    // Trials are accumulated in fixed blocks of this many trials and the
    // block sums reduced in order, so the mean is bit-identical for any
    // worker count. Changing it changes the FP summation order.
    std::size_t block = 8;

    // When set, per-trial amplitudes are recorded with these estimator
    // parameters (window fraction, oscillation period in time units).
    bool collect_trial_amplitudes = false;
    double window_fraction = 0.25;
    double period = 0.0;
};

struct EnsembleResult {
    Trajectory mean_trajectory;    // <u>(t), pointwise over trials
    std::vector<double> std_err;   // per-sample standard error of the mean
    std::size_t n_trials = 0;
    std::uint64_t master_seed = 0;
    std::optional<std::vector<double>> per_trial_amplitudes;
    SystemSpec spec;
};

/// Pointwise ensemble mean over independent trials; trial i uses the stream
/// (master_seed, i). Kahan-compensated block accumulation makes the result
/// independent of scheduling and worker count. Propagates Diverged with the
/// offending trial index. For D = 0 every trial is the same deterministic
/// trajectory and the mean equals it exactly.
EnsembleResult ensemble_average(const SystemSpec& spec, const EnsembleOptions& opts);

/// Half peak-to-peak of the final window_fraction of the samples. `period`
/// (time units) guards the estimator: the window must contain at least three
/// oscillation periods, else WindowTooShort. Pass 0 to skip the guard for
/// non-oscillatory signals.
double amplitude(const Trajectory& traj, double window_fraction, double period);

struct ScanRow {
    double eps = 0.0;
    double D = 0.0;
    double amp_noise_free = 0.0;
    double amp_ensemble = 0.0;
    double amp_corrected = 0.0;
    double sigma2 = 0.0;
    double c_o = 0.0;
    double mu = 0.0;
    double eps_eff = 0.0;
    std::size_t n_trials = 0;
    std::uint64_t master_seed = 0;
    std::string status = "ok";  // error text for failed cells
};

struct ScanTable {
    std::vector<ScanRow> rows;
};

struct ScanOptions {
    std::size_t n_trials = 500;
    std::size_t n_steps = 10000;
    double dt = 0.1;
    double u_init = 0.01;
    double window_fraction = 0.25;
    std::uint64_t master_seed = 12345;
    double sigma2_horizon = 1000.0;
    std::size_t sigma2_realizations = 200;
    Sigma2Options sigma2_opts{};
    std::size_t workers = 0;
};

/// The (eps, D) sweep behind the bifurcation diagrams. Per cell:
///   amp_noise_free — D = 0 polynomial run (computed once per eps),
///   amp_ensemble   — amplitude of the ensemble mean at this D,
///   amp_corrected  — D = 0 run of the Corrected variant with
///                    effective_params(sigma2(D), kappa, nu, eps).
/// sigma2(D) is estimated once per D and reused across eps. Cell failures are
/// recorded in `status` (amplitudes NaN) without aborting the sweep.
ScanTable scan(std::span<const double> eps_grid, std::span<const double> D_grid,
               const ExpansionPoint& base, const HopfPoint& hopf, const ScanOptions& opts);

/// Largest eps whose amplitude reaches threshold_amp, linearly interpolated
/// between the bracketing grid cells. `points` are (eps, amplitude) pairs
/// sorted by ascending eps. Throws NoOnsetInRange when no cell reaches the
/// threshold.
double onset_locator(std::span<const std::pair<double, double>> points, double threshold_amp);

/// Seed streams used inside scan(), exposed so callers (e.g. the run
/// manifest) can reproduce the same sigma2 estimates and cell ensembles.
std::uint64_t scan_sigma2_seed(std::uint64_t master_seed, std::size_t d_index);
std::uint64_t scan_cell_seed(std::uint64_t master_seed, std::size_t cell_index);

}  // namespace ddehopf
