#include "ddehopf/expansion.hpp"

#include <cmath>
#include <string>

namespace ddehopf {

SigmoidDerivs sigmoid_derivs(double x, double slope) {
    if (!(slope > 0.0)) throw InvalidParameter("sigmoid_derivs: slope must be > 0");
    const double f = 1.0 / (1.0 + std::exp(-slope * x));
    const double g = f * (1.0 - f);
    SigmoidDerivs d;
    d.f = f;
    d.f1 = slope * g;
    d.f2 = slope * slope * g * (1.0 - 2.0 * f);
    d.f3 = slope * slope * slope * g * (1.0 - 6.0 * f + 6.0 * f * f);
    return d;
}

namespace {

double residual(double x, double gamma, double slope) {
    return x - gamma / (1.0 + std::exp(-slope * x));
}

}  // namespace

double fixed_point(double gamma, double slope) {
    if (!std::isfinite(gamma)) throw InvalidParameter("fixed_point: gamma must be finite");
    if (!(slope > 0.0)) throw InvalidParameter("fixed_point: slope must be > 0");
    if (gamma == 0.0) return 0.0;

    double lo = gamma < 0.0 ? gamma : 0.0;
    double hi = gamma < 0.0 ? 0.0 : gamma;
    // g(lo) < 0 < g(hi): g(gamma) = gamma (1 - f) and g(0) = -gamma/2 for
    // gamma < 0; mirrored for gamma > 0.
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid, gamma, slope) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double x = 0.5 * (lo + hi);

    // Newton polish, kept inside the bracket.
    for (int i = 0; i < 50; ++i) {
        const double r = residual(x, gamma, slope);
        if (std::abs(r) < 1e-15) break;
        const double d = 1.0 - gamma * sigmoid_derivs(x, slope).f1;
        if (d == 0.0) break;
        const double next = x - r / d;
        if (next <= lo || next >= hi) break;
        x = next;
    }

    if (!(std::abs(residual(x, gamma, slope)) < 1e-12))
        throw NoConvergence("fixed_point: residual above 1e-12 for gamma = " +
                            std::to_string(gamma));
    return x;
}

ExpansionPoint expand(double gamma, double slope) {
    if (gamma == 0.0)
        throw DegenerateGain("expand: gamma = 0 makes all feedback coefficients vanish");
    const double x_o = fixed_point(gamma, slope);
    const SigmoidDerivs d = sigmoid_derivs(x_o, slope);
    ExpansionPoint p;
    p.gamma = gamma;
    p.slope = slope;
    p.x_o = x_o;
    p.eta = gamma * d.f1;
    p.kappa = gamma * d.f2 / 2.0;
    p.nu = gamma * d.f3 / 6.0;
    return p;
}

double gamma_for_eta(double eta_target, double slope) {
    if (!(eta_target < 0.0))
        throw InvalidParameter("gamma_for_eta: eta_target must be negative");
    constexpr double gamma_min = -1.0e6;

    const auto composed = [slope](double gamma) {
        return gamma * sigmoid_derivs(fixed_point(gamma, slope), slope).f1;
    };

    // The composed map decreases monotonically from 0- toward its floor at
    // gamma_min; walk out geometrically to bracket the target.
    double hi = -1.0e-9;  // eta(hi) ~ 0
    double lo = -1.0e-3;
    while (composed(lo) > eta_target) {
        lo *= 4.0;
        if (lo < gamma_min)
            throw Unreachable("gamma_for_eta: target " + std::to_string(eta_target) +
                              " below the attainable range on gamma in [-1e6, 0)");
    }

    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (composed(mid) > eta_target)
            hi = mid;
        else
            lo = mid;
    }
    const double gamma = 0.5 * (lo + hi);
    if (!(std::abs(composed(gamma) - eta_target) < 1e-9))
        throw NoConvergence("gamma_for_eta: residual above 1e-9");
    return gamma;
}

}  // namespace ddehopf
