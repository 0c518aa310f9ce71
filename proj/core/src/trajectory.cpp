#include "ddehopf/trajectory.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ddehopf/rng.hpp"

namespace ddehopf {

std::vector<double> HistoryInit::materialize(std::size_t n_lag, double dt) const {
    std::vector<double> out;
    switch (kind) {
        case Kind::Constant:
            out.assign(n_lag + 1, value);
            break;
        case Kind::Cosine:
            out.resize(n_lag + 1);
            for (std::size_t j = 0; j <= n_lag; ++j) {
                const double theta =
                    (static_cast<double>(j) - static_cast<double>(n_lag)) * dt;
                out[j] = amplitude * std::cos(omega * theta);
            }
            break;
        case Kind::Samples:
            if (samples.size() != n_lag + 1)
                throw LengthMismatch("history samples: expected " + std::to_string(n_lag + 1) +
                                     " values, got " + std::to_string(samples.size()));
            out = samples;
            break;
    }
    return out;
}

std::size_t lag_steps(double tau, double dt) {
    if (!(dt > 0.0)) throw InvalidStep("integrate: dt must be > 0");
    if (!(tau > 0.0)) throw InvalidParameter("integrate: tau must be > 0");
    const double ratio = tau / dt;
    const auto n = std::llround(ratio);
    // Tolerance of a few ulp: decimal tau/dt pairs like 1.2/0.1 land 1 ulp
    // off an integer after the two parses and the division; genuinely
    // non-commensurate pairs miss by >1e10 ulp.
    const double ulp_ratio = std::nextafter(ratio, std::numeric_limits<double>::infinity()) - ratio;
    const double ulp_tau = std::nextafter(tau, std::numeric_limits<double>::infinity()) - tau;
    const bool ratio_ok = std::abs(ratio - static_cast<double>(n)) <= 4.0 * ulp_ratio;
    const bool product_ok = std::abs(static_cast<double>(n) * dt - tau) <= 4.0 * ulp_tau;
    if (n < 1 || !(ratio_ok || product_ok))
        throw NonCommensurateDelay("tau = " + std::to_string(tau) +
                                   " is not an integer multiple of dt = " + std::to_string(dt));
    return static_cast<std::size_t>(n);
}

Trajectory integrate(const SystemSpec& spec, const HistoryInit& history_init,
                     std::size_t n_steps, double dt, std::uint64_t seed) {
    if (n_steps < 1) throw InvalidParameter("integrate: n_steps must be >= 1");
    const Rhs rhs = make_rhs(spec);
    const std::size_t n_lag = lag_steps(spec.tau, dt);

    HistoryBuffer buf(dt, n_lag, history_init.materialize(n_lag, dt));
    buf.reserve(n_steps);

    const bool noisy = spec.D > 0.0;
    const double noise_scale = noisy ? std::sqrt(2.0 * spec.D * dt) : 0.0;
    GaussianRng rng(seed);

    for (std::size_t k = 0; k < n_steps; ++k) {
        const double u = buf.latest();
        double next = u + dt * rhs(u, buf.delayed());
        if (noisy) next += noise_scale * rng.gauss();
        if (!(std::abs(next) <= kDivergenceLimit))
            throw Diverged("trajectory diverged (|u| > 1e6) at step " + std::to_string(k + 1));
        buf.append(next);
    }

    Trajectory out;
    out.t0 = 0.0;
    out.dt = dt;
    const auto all = buf.values();
    out.samples.assign(all.begin() + static_cast<std::ptrdiff_t>(n_lag), all.end());
    if (noisy) out.seed = seed;
    return out;
}

}  // namespace ddehopf
