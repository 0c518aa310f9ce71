#include "ddehopf/noise_correction.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ddehopf/parallel.hpp"
#include "ddehopf/rng.hpp"

namespace ddehopf {

namespace {

// Kahan-compensated mean of squares.
double mean_of_squares(std::span<const double> values) {
    double sum = 0.0, comp = 0.0;
    for (const double v : values) {
        const double term = v * v - comp;
        const double t = sum + term;
        comp = (t - sum) - term;
        sum = t;
    }
    return sum / static_cast<double>(values.size());
}

double kahan_mean(std::span<const double> values) {
    double sum = 0.0, comp = 0.0;
    for (const double v : values) {
        const double term = v - comp;
        const double t = sum + term;
        comp = (t - sum) - term;
        sum = t;
    }
    return sum / static_cast<double>(values.size());
}

}  // namespace

Sigma2Estimate estimate_sigma2(const HopfPoint& hopf, double D, double horizon,
                               std::size_t n_real, std::uint64_t seed,
                               const Sigma2Options& opts) {
    if (!(D >= 0.0)) throw InvalidParameter("estimate_sigma2: D must be >= 0");
    if (!(horizon >= 10.0 * hopf.tau))
        throw InvalidParameter("estimate_sigma2: horizon must be >= 10 tau");
    if (n_real < 10) throw InvalidParameter("estimate_sigma2: need at least 10 realizations");
    if (!(opts.window_begin >= 0.0 && opts.window_end <= 1.0 &&
          opts.window_begin < opts.window_end))
        throw InvalidParameter("estimate_sigma2: window fractions must satisfy 0 <= b < e <= 1");

    const auto n_steps = static_cast<std::size_t>(std::llround(horizon / opts.dt));
    const SystemSpec spec = SystemSpec::linear_critical(hopf.eta_c, hopf.tau, D);
    const HistoryInit zero = HistoryInit::constant(0.0);

    const double cos_wt = 1.0 / hopf.eta_c;  // = cos(w_c tau) on the spectrum
    const double factor = 1.0 - 2.0 * hopf.d.real() * cos_wt;
    const double factor2 = factor * factor;

    std::vector<double> h2(n_real);
    parallel_blocks(n_real, 8, opts.workers, [&](std::size_t first, std::size_t last, std::size_t) {
        for (std::size_t i = first; i < last; ++i) {
            Trajectory traj;
            try {
                traj = integrate(spec, zero, n_steps, opts.dt, derive_stream(seed, i));
            } catch (const Diverged& e) {
                throw Diverged("estimate_sigma2: realization " + std::to_string(i) + ": " +
                               e.what());
            }
            const auto n = traj.samples.size();
            const auto i0 = static_cast<std::size_t>(static_cast<double>(n) * opts.window_begin);
            const auto i1 = static_cast<std::size_t>(static_cast<double>(n) * opts.window_end);
            h2[i] = mean_of_squares(std::span<const double>(traj.samples).subspan(i0, i1 - i0));
        }
    });

    Sigma2Estimate est;
    est.h2_mean = kahan_mean(h2);
    est.sigma2 = factor2 * est.h2_mean;
    if (n_real > 1) {
        double ss = 0.0;
        for (const double v : h2) {
            const double dlt = factor2 * v - est.sigma2;
            ss += dlt * dlt;
        }
        est.std_err = std::sqrt(ss / static_cast<double>(n_real - 1) /
                                static_cast<double>(n_real));
    }
    est.horizon = horizon;
    est.dt = opts.dt;
    est.window_begin = opts.window_begin;
    est.window_end = opts.window_end;
    est.n_real = n_real;
    est.seed = seed;
    return est;
}

namespace {

std::complex<double> project_z1(std::span<const std::complex<double>> segment, double dt,
                                const HopfPoint& hopf) {
    const std::size_t n_lag = lag_steps(hopf.tau, dt);
    if (segment.size() != n_lag + 1)
        throw LengthMismatch("project_center: segment must hold exactly tau/dt + 1 samples (" +
                             std::to_string(n_lag + 1) + "), got " +
                             std::to_string(segment.size()));

    // trapezoid over xi in [-tau, 0] on the segment grid
    std::complex<double> sum = 0.0;
    for (std::size_t j = 0; j <= n_lag; ++j) {
        const double xi = (static_cast<double>(j) - static_cast<double>(n_lag)) * dt;
        const double weight = (j == 0 || j == n_lag) ? 0.5 : 1.0;
        const std::complex<double> psi1 =
            hopf.d * std::exp(std::complex<double>(0.0, -hopf.w_c * (xi + hopf.tau)));
        sum += weight * psi1 * segment[j];
    }
    return hopf.d * segment.back() + hopf.eta_c * dt * sum;
}

}  // namespace

CenterProjection project_center(std::span<const double> segment, double dt,
                                const HopfPoint& hopf) {
    std::vector<std::complex<double>> c(segment.begin(), segment.end());
    const std::complex<double> z1 = project_z1(c, dt, hopf);
    CenterProjection p;
    p.z1 = z1;
    p.h0 = segment.back() - 2.0 * z1.real();
    return p;
}

ComplexCenterProjection project_center(std::span<const std::complex<double>> segment, double dt,
                                       const HopfPoint& hopf) {
    ComplexCenterProjection p;
    p.z1 = project_z1(segment, dt, hopf);
    std::vector<std::complex<double>> conj(segment.size());
    for (std::size_t i = 0; i < segment.size(); ++i) conj[i] = std::conj(segment[i]);
    p.z2 = std::conj(project_z1(conj, dt, hopf));
    p.remainder0 = segment.back() - (p.z1 + p.z2);
    return p;
}

NoiseCorrection effective_params(double sigma2, double kappa, double nu, double eps) {
    if (!(sigma2 >= 0.0)) throw InvalidParameter("effective_params: sigma2 must be >= 0");
    NoiseCorrection c;
    c.sigma2 = sigma2;
    // + 0.0 normalizes the -0.0 that kappa * 0.0 produces for D = 0
    c.c_o = kappa * sigma2 + 0.0;
    c.mu = (3.0 * nu) * sigma2 + 0.0;
    c.eps_eff = eps + c.mu;
    return c;
}

NoiseCorrection correction_for(const HopfPoint& hopf, double kappa, double nu, double eps,
                               double D, double horizon, std::size_t n_real, std::uint64_t seed,
                               const Sigma2Options& opts) {
    const Sigma2Estimate est = estimate_sigma2(hopf, D, horizon, n_real, seed, opts);
    NoiseCorrection c = effective_params(est.sigma2, kappa, nu, eps);
    c.D = D;
    c.meta.horizon = est.horizon;
    c.meta.dt = est.dt;
    c.meta.window_begin = est.window_begin;
    c.meta.window_end = est.window_end;
    c.meta.std_err = est.std_err;
    c.meta.n_real = est.n_real;
    c.meta.seed = est.seed;
    return c;
}

}  // namespace ddehopf
