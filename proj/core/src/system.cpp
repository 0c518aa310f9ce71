#include "ddehopf/system.hpp"

#include <cmath>
#include <string>

namespace ddehopf {

namespace {

void check_base(const SystemSpec& spec) {
    if (!(spec.tau > 0.0)) throw InvalidParameter("SystemSpec: tau must be > 0");
    if (!(spec.D >= 0.0)) throw InvalidParameter("SystemSpec: D must be >= 0");
}

void require(double value, const char* name) {
    if (std::isnan(value)) throw MissingParameter(std::string("missing parameter: ") + name);
}

}  // namespace

SystemSpec SystemSpec::original(double gamma, double slope, double tau, double D) {
    SystemSpec s;
    s.variant = Variant::Original;
    s.gamma = gamma;
    s.slope = slope;
    s.tau = tau;
    s.D = D;
    return s;
}

SystemSpec SystemSpec::polynomial(double eta, double kappa, double nu, double tau, double D) {
    SystemSpec s;
    s.variant = Variant::Polynomial;
    s.eta = eta;
    s.kappa = kappa;
    s.nu = nu;
    s.tau = tau;
    s.D = D;
    return s;
}

SystemSpec SystemSpec::corrected(double eta_c, double eps_eff, double kappa, double nu, double c_o,
                                 double tau, double D) {
    SystemSpec s;
    s.variant = Variant::Corrected;
    s.eta_c = eta_c;
    s.eps_eff = eps_eff;
    s.kappa = kappa;
    s.nu = nu;
    s.c_o = c_o;
    s.tau = tau;
    s.D = D;
    return s;
}

SystemSpec SystemSpec::linear_critical(double eta_c, double tau, double D) {
    SystemSpec s;
    s.variant = Variant::LinearCritical;
    s.eta_c = eta_c;
    s.tau = tau;
    s.D = D;
    return s;
}

Rhs make_rhs(const SystemSpec& spec) {
    check_base(spec);
    Rhs rhs;
    rhs.variant_ = spec.variant;
    switch (spec.variant) {
        case Variant::Original:
            require(spec.gamma, "gamma");
            require(spec.slope, "slope");
            if (!(spec.slope > 0.0)) throw InvalidParameter("Original: slope must be > 0");
            rhs.gamma_ = spec.gamma;
            rhs.slope_ = spec.slope;
            break;
        case Variant::Polynomial:
            require(spec.eta, "eta");
            require(spec.kappa, "kappa");
            require(spec.nu, "nu");
            rhs.lin_ = spec.eta;
            rhs.quad_ = spec.kappa;
            rhs.cub_ = spec.nu;
            break;
        case Variant::Corrected:
            require(spec.eta_c, "eta_c");
            require(spec.eps_eff, "eps_eff");
            require(spec.kappa, "kappa");
            require(spec.nu, "nu");
            require(spec.c_o, "c_o");
            rhs.offset_ = spec.c_o;
            rhs.lin_ = spec.eta_c + spec.eps_eff;
            rhs.quad_ = spec.kappa;
            rhs.cub_ = spec.nu;
            break;
        case Variant::LinearCritical:
            require(spec.eta_c, "eta_c");
            rhs.lin_ = spec.eta_c;
            break;
        default:
            throw UnknownVariant("make_rhs: unknown system variant");
    }
    return rhs;
}

}  // namespace ddehopf
