#include "ddehopf/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ddehopf {

std::complex<double> char_residual(std::complex<double> lambda, double eta, double tau) {
    return lambda + 1.0 - eta * std::exp(-lambda * tau);
}

HopfPoint solve_hopf(double tau) {
    if (!(tau > 0.0)) throw InvalidParameter("solve_hopf: tau must be > 0");

    // In m = -eta_c > 1 the branch condition w tau in (pi/2, pi) collapses to
    // the scalar equation sqrt(m^2-1) tau = pi - asin(sqrt(m^2-1)/m), which
    // changes sign exactly once on (1, sqrt(1 + (pi/tau)^2)].
    const auto angle_gap = [tau](double m) {
        const double w = std::sqrt(m * m - 1.0);
        return w * tau - (std::numbers::pi - std::asin(w / m));
    };

    double lo = 1.0 + 1e-14;
    double hi = std::sqrt(1.0 + (std::numbers::pi / tau) * (std::numbers::pi / tau));
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (angle_gap(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double m = 0.5 * (lo + hi);

    HopfPoint h;
    h.tau = tau;
    h.eta_c = -m;
    h.w_c = std::sqrt(m * m - 1.0);
    h.d = adjoint_norm(h.eta_c, h.w_c, tau);

    if (!(std::abs(char_residual({0.0, h.w_c}, h.eta_c, tau)) < 1e-10))
        throw NoConvergence("solve_hopf: characteristic residual above 1e-10 at tau = " +
                            std::to_string(tau));
    return h;
}

std::complex<double> adjoint_norm(double eta_c, double w_c, double tau) {
    (void)eta_c;  // folded in via eta_c exp(-i w_c tau) = 1 + i w_c
    return 1.0 / std::complex<double>(1.0 + tau, tau * w_c);
}

std::complex<double> bilinear(const std::function<std::complex<double>(double)>& psi,
                              const std::function<std::complex<double>(double)>& phi,
                              double eta_c, double tau, std::size_t n_intervals) {
    if (n_intervals < 1000)
        throw ResolutionTooCoarse("bilinear: need at least 1000 quadrature intervals, got " +
                                  std::to_string(n_intervals));
    const double h = tau / static_cast<double>(n_intervals);
    std::complex<double> sum = 0.0;
    for (std::size_t i = 0; i <= n_intervals; ++i) {
        const double xi = -tau + static_cast<double>(i) * h;
        const double weight = (i == 0 || i == n_intervals) ? 0.5 : 1.0;
        sum += weight * psi(xi + tau) * phi(xi);
    }
    return psi(0.0) * phi(0.0) + eta_c * h * sum;
}

}  // namespace ddehopf
