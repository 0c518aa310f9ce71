#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ddehopf/history.hpp"
#include "ddehopf/system.hpp"

namespace ddehopf {

/// Initial history u(theta) on theta in [-tau, 0].
struct HistoryInit {
    enum class Kind { Constant, Cosine, Samples };

    Kind kind = Kind::Constant;
    double value = 0.01;           // Constant
    double amplitude = 0.0;        // Cosine: amplitude * cos(omega * theta)
    double omega = 0.0;            // Cosine
    std::vector<double> samples;   // Samples, oldest first, length n_lag + 1

    static HistoryInit constant(double value) {
        HistoryInit h;
        h.kind = Kind::Constant;
        h.value = value;
        return h;
    }
    static HistoryInit cosine(double amplitude, double omega) {
        HistoryInit h;
        h.kind = Kind::Cosine;
        h.amplitude = amplitude;
        h.omega = omega;
        return h;
    }
    static HistoryInit from_samples(std::vector<double> samples) {
        HistoryInit h;
        h.kind = Kind::Samples;
        h.samples = std::move(samples);
        return h;
    }

    // Samples at theta_j = (j - n_lag) * dt, j = 0..n_lag.
    std::vector<double> materialize(std::size_t n_lag, double dt) const;
};

/// One realization: samples at t0, t0+dt, ..., t0+n_steps*dt.
/// samples.size() == n_steps + 1 (includes the initial state). `seed` is the
/// stream seed that produced the noise, absent for deterministic runs.
struct Trajectory {
    double t0 = 0.0;
    double dt = 0.1;
    std::vector<double> samples;
    std::optional<std::uint64_t> seed;

    std::size_t n_steps() const { return samples.empty() ? 0 : samples.size() - 1; }
    double t_end() const { return t0 + static_cast<double>(n_steps()) * dt; }
};

/// Number of delay steps tau/dt. Throws NonCommensurateDelay unless tau is an
/// integer multiple of dt to within half an ulp.
std::size_t lag_steps(double tau, double dt);

/// Ito Euler-Maruyama with one discrete delay:
///   u_{k+1} = u_k + dt * rhs(u_k, u_{k-n_lag}) + sqrt(2 D dt) * N(0,1).
/// Deterministic runs (D = 0) draw nothing and are seed-independent.
/// Throws Diverged when |u| exceeds kDivergenceLimit.
Trajectory integrate(const SystemSpec& spec, const HistoryInit& history_init,
                     std::size_t n_steps, double dt, std::uint64_t seed);

}  // namespace ddehopf
