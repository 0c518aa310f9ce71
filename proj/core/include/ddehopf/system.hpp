#pragma once

#include <cmath>
#include <limits>

#include "ddehopf/errors.hpp"

namespace ddehopf {

// How far |u| may wander before a trajectory is declared divergent.
inline constexpr double kDivergenceLimit = 1.0e6;

enum class Variant {
    Original,        // -x + gamma * f(x_tau), sigmoidal f
    Polynomial,      // -u + eta u_tau + kappa u_tau^2 + nu u_tau^3
    Corrected,       // c_o - Z + (eta_c + eps_eff) Z_tau + kappa Z_tau^2 + nu Z_tau^3
    LinearCritical,  // -H + eta_c H_tau
};

/// Right-hand-side descriptor: one equation variant, its coefficients, the
/// noise intensity D and the delay tau. Fields not used by the active variant
/// stay NaN; make_rhs() checks that the required ones are present.
struct SystemSpec {
    static constexpr double unset = std::numeric_limits<double>::quiet_NaN();

    Variant variant = Variant::Polynomial;
    double tau = 12.0;
    double D = 0.0;

    double gamma = unset;  // Original
    double slope = unset;  // Original

    double eta = unset;    // Polynomial
    double kappa = unset;  // Polynomial, Corrected
    double nu = unset;     // Polynomial, Corrected

    double eta_c = unset;    // Corrected, LinearCritical
    double eps_eff = unset;  // Corrected
    double c_o = unset;      // Corrected

    static SystemSpec original(double gamma, double slope, double tau, double D = 0.0);
    static SystemSpec polynomial(double eta, double kappa, double nu, double tau, double D = 0.0);
    static SystemSpec corrected(double eta_c, double eps_eff, double kappa, double nu, double c_o,
                                double tau, double D = 0.0);
    static SystemSpec linear_critical(double eta_c, double tau, double D = 0.0);
};

/// Compiled right-hand side f(u, u_tau) for one SystemSpec.
///
/// The three polynomial-shaped variants evaluate through the identical
/// expression offset + (Horner(u_tau) - u), so Corrected with c_o = 0 and
/// eps_eff = eps is bit-identical to Polynomial with eta = eta_c + eps.
class Rhs {
public:
    double operator()(double u, double u_tau) const noexcept {
        if (variant_ == Variant::Original)
            return gamma_ / (1.0 + std::exp(-slope_ * u_tau)) - u;
        return offset_ + (u_tau * (lin_ + u_tau * (quad_ + u_tau * cub_)) - u);
    }

    Variant variant() const noexcept { return variant_; }

private:
    friend Rhs make_rhs(const SystemSpec& spec);

    Variant variant_ = Variant::Polynomial;
    double offset_ = 0.0;
    double lin_ = 0.0;
    double quad_ = 0.0;
    double cub_ = 0.0;
    double gamma_ = 0.0;
    double slope_ = 0.0;
};

/// Validates the spec (required coefficients present, D >= 0, tau > 0) and
/// builds the evaluator. Throws MissingParameter / UnknownVariant /
/// InvalidParameter.
Rhs make_rhs(const SystemSpec& spec);

}  // namespace ddehopf
