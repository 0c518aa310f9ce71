#include "ddehopf/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ddehopf/parallel.hpp"
#include "ddehopf/rng.hpp"

namespace ddehopf {

namespace {

constexpr std::uint64_t kSigmaSeedTag = 0x73696732ULL;  // sigma2 estimation streams
constexpr std::uint64_t kCellSeedTag = 0x63656c6cULL;   // per-cell ensemble streams

struct KahanAcc {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double term = v - comp;
        const double t = sum + term;
        comp = (t - sum) - term;
        sum = t;
    }
};

}  // namespace

std::uint64_t scan_sigma2_seed(std::uint64_t master_seed, std::size_t d_index) {
    return derive_stream(master_seed, kSigmaSeedTag, d_index);
}

std::uint64_t scan_cell_seed(std::uint64_t master_seed, std::size_t cell_index) {
    return derive_stream(master_seed, kCellSeedTag, cell_index);
}

EnsembleResult ensemble_average(const SystemSpec& spec, const EnsembleOptions& opts) {
    if (opts.n_trials < 1) throw InvalidParameter("ensemble_average: n_trials must be >= 1");

    EnsembleResult res;
    res.n_trials = opts.n_trials;
    res.master_seed = opts.master_seed;
    res.spec = spec;

    if (spec.D == 0.0) {
        // Every trial is the same deterministic trajectory; the mean is it.
        res.mean_trajectory = integrate(spec, opts.history, opts.n_steps, opts.dt,
                                        derive_stream(opts.master_seed, 0));
        res.std_err.assign(res.mean_trajectory.samples.size(), 0.0);
        if (opts.collect_trial_amplitudes) {
            const double a = amplitude(res.mean_trajectory, opts.window_fraction, opts.period);
            res.per_trial_amplitudes = std::vector<double>(opts.n_trials, a);
        }
        return res;
    }

    const std::size_t n_samples = opts.n_steps + 1;
    const std::size_t block = opts.block > 0 ? opts.block : 8;
    const std::size_t n_blocks = (opts.n_trials + block - 1) / block;

    std::vector<std::vector<double>> block_sum(n_blocks);
    std::vector<std::vector<double>> block_sumsq(n_blocks);
    std::vector<double> trial_amp;
    if (opts.collect_trial_amplitudes) trial_amp.resize(opts.n_trials);

    parallel_blocks(opts.n_trials, block, opts.workers,
                    [&](std::size_t first, std::size_t last, std::size_t b) {
        std::vector<KahanAcc> sum(n_samples), sumsq(n_samples);
        for (std::size_t i = first; i < last; ++i) {
            Trajectory traj;
            try {
                traj = integrate(spec, opts.history, opts.n_steps, opts.dt,
                                 derive_stream(opts.master_seed, i));
            } catch (const Diverged& e) {
                throw Diverged("ensemble trial " + std::to_string(i) + ": " + e.what());
            }
            for (std::size_t k = 0; k < n_samples; ++k) {
                const double v = traj.samples[k];
                sum[k].add(v);
                sumsq[k].add(v * v);
            }
            if (opts.collect_trial_amplitudes)
                trial_amp[i] = amplitude(traj, opts.window_fraction, opts.period);
        }
        block_sum[b].resize(n_samples);
        block_sumsq[b].resize(n_samples);
        for (std::size_t k = 0; k < n_samples; ++k) {
            block_sum[b][k] = sum[k].sum;
            block_sumsq[b][k] = sumsq[k].sum;
        }
    });

    res.mean_trajectory.t0 = 0.0;
    res.mean_trajectory.dt = opts.dt;
    res.mean_trajectory.samples.resize(n_samples);
    res.std_err.resize(n_samples);
    const double n = static_cast<double>(opts.n_trials);
    for (std::size_t k = 0; k < n_samples; ++k) {
        KahanAcc total, total_sq;
        for (std::size_t b = 0; b < n_blocks; ++b) {
            total.add(block_sum[b][k]);
            total_sq.add(block_sumsq[b][k]);
        }
        const double mean = total.sum / n;
        res.mean_trajectory.samples[k] = mean;
        if (opts.n_trials > 1) {
            const double var = std::max(0.0, (total_sq.sum - n * mean * mean) / (n - 1.0));
            res.std_err[k] = std::sqrt(var / n);
        } else {
            res.std_err[k] = 0.0;
        }
    }
    if (opts.collect_trial_amplitudes) res.per_trial_amplitudes = std::move(trial_amp);
    return res;
}

double amplitude(const Trajectory& traj, double window_fraction, double period) {
    if (!(window_fraction > 0.0 && window_fraction <= 0.5))
        throw InvalidParameter("amplitude: window_fraction must be in (0, 0.5]");
    const std::size_t n = traj.samples.size();
    const auto w_len = static_cast<std::size_t>(static_cast<double>(n) * window_fraction);
    if (w_len < 2) throw WindowTooShort("amplitude: window holds fewer than 2 samples");
    const double span = static_cast<double>(w_len - 1) * traj.dt;
    if (period > 0.0 && span < 3.0 * period)
        throw WindowTooShort("amplitude: window spans " + std::to_string(span) +
                             " time units, need >= 3 periods (" + std::to_string(3.0 * period) +
                             ")");
    double lo = traj.samples[n - w_len];
    double hi = lo;
    for (std::size_t k = n - w_len; k < n; ++k) {
        lo = std::min(lo, traj.samples[k]);
        hi = std::max(hi, traj.samples[k]);
    }
    return 0.5 * (hi - lo);
}

ScanTable scan(std::span<const double> eps_grid, std::span<const double> D_grid,
               const ExpansionPoint& base, const HopfPoint& hopf, const ScanOptions& opts) {
    if (eps_grid.empty() || D_grid.empty())
        throw InvalidParameter("scan: eps and D grids must be non-empty");
    for (std::size_t i = 0; i < eps_grid.size(); ++i)
        for (std::size_t j = i + 1; j < eps_grid.size(); ++j)
            if (eps_grid[i] == eps_grid[j]) throw InvalidParameter("scan: duplicate eps value");
    for (std::size_t i = 0; i < D_grid.size(); ++i)
        for (std::size_t j = i + 1; j < D_grid.size(); ++j)
            if (D_grid[i] == D_grid[j]) throw InvalidParameter("scan: duplicate D value");

    const double period = 2.0 * std::numbers::pi / hopf.w_c;
    const HistoryInit history = HistoryInit::constant(opts.u_init);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    // Noise-free amplitudes, once per eps (D-independent).
    std::vector<double> amp_free(eps_grid.size(), nan);
    std::vector<std::string> free_status(eps_grid.size(), "ok");
    for (std::size_t e = 0; e < eps_grid.size(); ++e) {
        try {
            const auto spec =
                SystemSpec::polynomial(hopf.eta_c + eps_grid[e], base.kappa, base.nu, hopf.tau);
            const Trajectory traj = integrate(spec, history, opts.n_steps, opts.dt, 0);
            amp_free[e] = amplitude(traj, opts.window_fraction, period);
        } catch (const Error& err) {
            free_status[e] = err.what();
        }
    }

    ScanTable table;
    table.rows.reserve(eps_grid.size() * D_grid.size());
    for (std::size_t d = 0; d < D_grid.size(); ++d) {
        const double D = D_grid[d];

        Sigma2Estimate s2;
        std::string sigma_status = "ok";
        try {
            Sigma2Options sopts = opts.sigma2_opts;
            sopts.dt = opts.dt;
            sopts.workers = opts.workers;
            s2 = estimate_sigma2(hopf, D, opts.sigma2_horizon, opts.sigma2_realizations,
                                 scan_sigma2_seed(opts.master_seed, d), sopts);
        } catch (const Error& err) {
            sigma_status = err.what();
        }

        for (std::size_t e = 0; e < eps_grid.size(); ++e) {
            const double eps = eps_grid[e];
            ScanRow row;
            row.eps = eps;
            row.D = D;
            row.n_trials = opts.n_trials;
            row.master_seed = opts.master_seed;
            row.amp_noise_free = amp_free[e];
            row.amp_ensemble = nan;
            row.amp_corrected = nan;
            row.sigma2 = nan;

            if (sigma_status != "ok") {
                row.status = sigma_status;
            } else if (free_status[e] != "ok") {
                row.status = free_status[e];
            } else {
                const NoiseCorrection corr =
                    effective_params(s2.sigma2, base.kappa, base.nu, eps);
                row.sigma2 = corr.sigma2;
                row.c_o = corr.c_o;
                row.mu = corr.mu;
                row.eps_eff = corr.eps_eff;
                try {
                    EnsembleOptions eopts;
                    eopts.n_trials = opts.n_trials;
                    eopts.n_steps = opts.n_steps;
                    eopts.dt = opts.dt;
                    eopts.master_seed =
                        scan_cell_seed(opts.master_seed, d * eps_grid.size() + e);
                    eopts.history = history;
                    eopts.workers = opts.workers;
                    const auto spec = SystemSpec::polynomial(hopf.eta_c + eps, base.kappa,
                                                             base.nu, hopf.tau, D);
                    const EnsembleResult ens = ensemble_average(spec, eopts);
                    row.amp_ensemble =
                        amplitude(ens.mean_trajectory, opts.window_fraction, period);

                    const auto cspec =
                        SystemSpec::corrected(hopf.eta_c, corr.eps_eff, base.kappa, base.nu,
                                              corr.c_o, hopf.tau);
                    const Trajectory ctraj =
                        integrate(cspec, history, opts.n_steps, opts.dt, 0);
                    row.amp_corrected = amplitude(ctraj, opts.window_fraction, period);
                } catch (const Error& err) {
                    row.status = err.what();
                }
            }
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

double onset_locator(std::span<const std::pair<double, double>> points, double threshold_amp) {
    if (points.size() < 2) throw InvalidParameter("onset_locator: need at least 2 grid points");
    if (!(threshold_amp > 0.0))
        throw InvalidParameter("onset_locator: threshold must be > 0");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i].first > points[i - 1].first))
            throw InvalidParameter("onset_locator: points must be sorted by ascending eps");

    for (std::size_t i = points.size(); i-- > 0;) {
        if (points[i].second >= threshold_amp) {
            if (i + 1 == points.size()) return points[i].first;  // reaches the grid edge
            const auto [e0, a0] = points[i];
            const auto [e1, a1] = points[i + 1];
            return e0 + (threshold_amp - a0) * (e1 - e0) / (a1 - a0);
        }
    }
    throw NoOnsetInRange("onset_locator: no amplitude reaches the threshold");
}

}  // namespace ddehopf
