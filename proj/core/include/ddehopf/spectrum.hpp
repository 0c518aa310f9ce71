#pragma once

#include <complex>
#include <functional>

#include "ddehopf/errors.hpp"

namespace ddehopf {

/// Principal Hopf point of the linearized delay equation u' = -u + eta u_tau:
/// critical gain eta_c < -1, frequency w_c = sqrt(eta_c^2 - 1), and the
/// adjoint normalization constant d = 1 / (1 + tau (1 + i w_c)).
struct HopfPoint {
    double tau;
    double eta_c;
    double w_c;
    std::complex<double> d;
};

/// Characteristic residual lambda + 1 - eta exp(-lambda tau). Zero exactly on
/// the spectrum of the linearized equation (ansatz u = u0 exp(lambda t), so
/// u_tau picks up exp(-lambda tau)).
std::complex<double> char_residual(std::complex<double> lambda, double eta, double tau);

/// Locates the first crossing of the imaginary axis: eta cos(w tau) = 1,
/// w = -eta sin(w tau), on the branch w tau in (pi/2, pi) with eta < -1.
HopfPoint solve_hopf(double tau);

/// Closed form of the adjoint normalization constant. Pure formula
/// evaluation; meaningful when (eta_c, w_c) satisfy the characteristic
/// equation.
std::complex<double> adjoint_norm(double eta_c, double w_c, double tau);

/// Bilinear pairing (a, b) = a(0) b(0) + eta_c * integral_{-tau}^{0}
/// a(xi + tau) b(xi) dxi, by composite trapezoid on a uniform grid.
/// psi is evaluated on [0, tau], phi on [-tau, 0].
std::complex<double> bilinear(const std::function<std::complex<double>(double)>& psi,
                              const std::function<std::complex<double>(double)>& phi,
                              double eta_c, double tau, std::size_t n_intervals = 10000);

}  // namespace ddehopf
