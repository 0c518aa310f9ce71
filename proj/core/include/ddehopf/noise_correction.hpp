#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include "ddehopf/spectrum.hpp"
#include "ddehopf/trajectory.hpp"

namespace ddehopf {

struct Sigma2Options {
    double dt = 0.1;
    // H^2 is averaged over [window_begin, window_end] * horizon. The critical
    // linear system diffuses along the center direction, so <H^2> grows with
    // the window's mean time; the early window is the one whose mu = 3 nu
    // sigma2 reproduces the measured onset retreat (see README).
    double window_begin = 0.0;
    double window_end = 0.5;
    std::size_t workers = 0;  // 0 = default_workers()
};

struct Sigma2Estimate {
    double sigma2 = 0.0;
    double std_err = 0.0;
    double h2_mean = 0.0;  // time-and-ensemble average of H^2 over the window
    double horizon = 0.0;
    double dt = 0.0;
    double window_begin = 0.0;
    double window_end = 0.0;
    std::size_t n_real = 0;
    std::uint64_t seed = 0;
};

/// Simulates the critical linear system H' = -H + eta_c H_tau + sqrt(2D) xi
/// from zero history, n_real times with streams (seed, i), and returns
///   sigma2 = (1 - 2 Re(d) cos(w_c tau))^2 <H^2>,
/// with cos(w_c tau) evaluated as 1/eta_c (characteristic-equation identity).
/// The standard error is across realizations.
Sigma2Estimate estimate_sigma2(const HopfPoint& hopf, double D, double horizon,
                               std::size_t n_real, std::uint64_t seed,
                               const Sigma2Options& opts = {});

/// Center-mode amplitude of a history segment spanning [t - tau, t]:
///   z1 = psi1(0) H(t) + eta_c * integral psi1(xi + tau) H(t + xi) dxi,
/// psi1(s) = d exp(-i w_c s), quadrature on the segment's own grid.
/// For real segments z2 = conj(z1) and the stable remainder at theta = 0 is
/// h0 = H(t) - 2 Re z1.
struct CenterProjection {
    std::complex<double> z1;
    double h0;
};

CenterProjection project_center(std::span<const double> segment, double dt,
                                const HopfPoint& hopf);

/// Complex-valued overload (used to verify the (Phi, Psi) = I normalization
/// with eigenfunction inputs). remainder0 = H(t) - (z1 + z2).
struct ComplexCenterProjection {
    std::complex<double> z1;
    std::complex<double> z2;
    std::complex<double> remainder0;
};

ComplexCenterProjection project_center(std::span<const std::complex<double>> segment, double dt,
                                       const HopfPoint& hopf);

/// Effective parameters of the noise-corrected equation:
///   c_o = kappa sigma2, mu = 3 nu sigma2, eps_eff = eps + mu.
struct NoiseCorrection {
    double D = 0.0;
    double sigma2 = 0.0;
    double c_o = 0.0;
    double mu = 0.0;
    double eps_eff = 0.0;

    struct Meta {
        double horizon = 0.0;
        double dt = 0.0;
        double window_begin = 0.0;
        double window_end = 0.0;
        double std_err = 0.0;
        std::size_t n_real = 0;
        std::uint64_t seed = 0;
    } meta;
};

NoiseCorrection effective_params(double sigma2, double kappa, double nu, double eps);

/// estimate_sigma2 + effective_params in one call; fills D and meta.
NoiseCorrection correction_for(const HopfPoint& hopf, double kappa, double nu, double eps,
                               double D, double horizon, std::size_t n_real, std::uint64_t seed,
                               const Sigma2Options& opts = {});

}  // namespace ddehopf
