#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ddehopf::cli {

/// Flat key = value run configuration. Defaults reproduce the reference
/// operating point (tau 12, gamma -0.05, slope 60, dt 0.1, 1e4 steps,
/// D 1e-5). Flags win over config-file values; the serialized form
/// round-trips through parse() bit-exactly.
struct RunConfig {
    double tau = 12.0;
    double gamma = -0.05;
    double slope = 60.0;
    double dt = 0.1;
    std::size_t n_steps = 10000;
    double eps = -0.05;
    double eps_min = -0.40;
    double eps_max = 0.25;
    double eps_step = 0.01;
    double D = 1e-5;
    std::vector<double> D_list = {0.0, 1e-5};
    std::size_t n_trials = 500;
    std::uint64_t seed = 12345;
    std::string out = "out";
    double u_init = 0.01;
    double window_fraction = 0.25;
    std::size_t decimation = 10;
    double sigma2_horizon = 1000.0;
    std::size_t sigma2_realizations = 200;
    // Resolved to 0.9 * u_init when left unset (NaN in the file is invalid;
    // absence means "derive from u_init").
    double onset_threshold = -1.0;

    double resolved_onset_threshold() const {
        return onset_threshold > 0.0 ? onset_threshold : 0.9 * u_init;
    }

    std::vector<double> eps_grid() const;

    /// Throws ddehopf::InvalidParameter on unknown keys or malformed values.
    static RunConfig from_file(const std::string& path);
    static RunConfig from_text(const std::string& text);

    /// Canonical key order, full-precision values ('#' lines not included).
    std::string serialize() const;

    /// Range/consistency checks shared by every command.
    void validate() const;
};

std::string format_double(double v);
double parse_double(const std::string& text);

}  // namespace ddehopf::cli
