#pragma once

#include "ddehopf/errors.hpp"

namespace ddehopf {

/// f, f', f'', f''' of the logistic sigmoid f(x) = 1 / (1 + exp(-slope x)).
struct SigmoidDerivs {
    double f;
    double f1;
    double f2;
    double f3;
};

SigmoidDerivs sigmoid_derivs(double x, double slope);

/// Root of x = gamma f(x). For gamma < 0 this is the unique root in
/// (gamma, 0); for gamma > 0 the bracketed root in (0, gamma).
/// Residual |x_o - gamma f(x_o)| < 1e-12 or NoConvergence.
double fixed_point(double gamma, double slope);

/// Fixed point and cubic Taylor coefficients of the feedback around it:
/// eta = gamma f'(x_o), kappa = gamma f''(x_o)/2!, nu = gamma f'''(x_o)/3!.
struct ExpansionPoint {
    double gamma;
    double slope;
    double x_o;
    double eta;
    double kappa;
    double nu;
};

/// Throws DegenerateGain for gamma = 0 (all coefficients collapse to zero).
ExpansionPoint expand(double gamma, double slope);

/// Inverse map: the gamma < 0 with gamma f'(x_o(gamma)) = eta_target, found by
/// root-finding on the composed map over gamma in [-1e6, 0). The map only
/// reaches eta ~ -15 by gamma = -1e6 (it grows logarithmically in |gamma|), so
/// more negative targets throw Unreachable.
double gamma_for_eta(double eta_target, double slope);

}  // namespace ddehopf
