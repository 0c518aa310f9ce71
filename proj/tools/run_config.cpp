#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ddehopf/errors.hpp"

namespace ddehopf::cli {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
    double v = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw InvalidParameter("malformed number: '" + text + "'");
    return v;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& text) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw InvalidParameter("malformed integer: '" + text + "'");
    return v;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item)));
    if (out.empty()) throw InvalidParameter("empty list value");
    return out;
}

std::string format_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_double(v[i]);
    }
    return out;
}

void apply(RunConfig& c, const std::string& key, const std::string& value) {
    if (key == "tau") c.tau = parse_double(value);
    else if (key == "gamma") c.gamma = parse_double(value);
    else if (key == "slope") c.slope = parse_double(value);
    else if (key == "dt") c.dt = parse_double(value);
    else if (key == "n_steps") c.n_steps = static_cast<std::size_t>(parse_u64(value));
    else if (key == "eps") c.eps = parse_double(value);
    else if (key == "eps_min") c.eps_min = parse_double(value);
    else if (key == "eps_max") c.eps_max = parse_double(value);
    else if (key == "eps_step") c.eps_step = parse_double(value);
    else if (key == "D") c.D = parse_double(value);
    else if (key == "D_list") c.D_list = parse_list(value);
    else if (key == "n_trials") c.n_trials = static_cast<std::size_t>(parse_u64(value));
    else if (key == "seed") c.seed = parse_u64(value);
    else if (key == "out") c.out = value;
    else if (key == "u_init") c.u_init = parse_double(value);
    else if (key == "window_fraction") c.window_fraction = parse_double(value);
    else if (key == "decimation") c.decimation = static_cast<std::size_t>(parse_u64(value));
    else if (key == "sigma2_horizon") c.sigma2_horizon = parse_double(value);
    else if (key == "sigma2_realizations")
        c.sigma2_realizations = static_cast<std::size_t>(parse_u64(value));
    else if (key == "onset_threshold") c.onset_threshold = parse_double(value);
    else throw InvalidParameter("unknown config key: '" + key + "'");
}

}  // namespace

std::vector<double> RunConfig::eps_grid() const {
    if (!(eps_step > 0.0)) throw InvalidParameter("eps_step must be > 0");
    if (!(eps_max >= eps_min)) throw InvalidParameter("eps_max must be >= eps_min");
    const auto n = static_cast<std::size_t>(std::llround((eps_max - eps_min) / eps_step)) + 1;
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = eps_min + static_cast<double>(i) * eps_step;
    return grid;
}

RunConfig RunConfig::from_text(const std::string& text) {
    RunConfig c;
    std::stringstream ss(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw InvalidParameter("config line " + std::to_string(line_no) +
                                   ": expected 'key = value'");
        apply(c, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

std::string RunConfig::serialize() const {
    std::string s;
    s += "tau = " + format_double(tau) + "\n";
    s += "gamma = " + format_double(gamma) + "\n";
    s += "slope = " + format_double(slope) + "\n";
    s += "dt = " + format_double(dt) + "\n";
    s += "n_steps = " + std::to_string(n_steps) + "\n";
    s += "eps = " + format_double(eps) + "\n";
    s += "eps_min = " + format_double(eps_min) + "\n";
    s += "eps_max = " + format_double(eps_max) + "\n";
    s += "eps_step = " + format_double(eps_step) + "\n";
    s += "D = " + format_double(D) + "\n";
    s += "D_list = " + format_list(D_list) + "\n";
    s += "n_trials = " + std::to_string(n_trials) + "\n";
    s += "seed = " + std::to_string(seed) + "\n";
    s += "out = " + out + "\n";
    s += "u_init = " + format_double(u_init) + "\n";
    s += "window_fraction = " + format_double(window_fraction) + "\n";
    s += "decimation = " + std::to_string(decimation) + "\n";
    s += "sigma2_horizon = " + format_double(sigma2_horizon) + "\n";
    s += "sigma2_realizations = " + std::to_string(sigma2_realizations) + "\n";
    s += "onset_threshold = " + format_double(resolved_onset_threshold()) + "\n";
    return s;
}

void RunConfig::validate() const {
    if (!(tau > 0.0)) throw InvalidParameter("tau must be > 0");
    if (!(dt > 0.0)) throw InvalidParameter("dt must be > 0");
    if (n_steps < 1) throw InvalidParameter("n_steps must be >= 1");
    if (!(slope > 0.0)) throw InvalidParameter("slope must be > 0");
    if (!(D >= 0.0)) throw InvalidParameter("D must be >= 0");
    for (const double d : D_list)
        if (!(d >= 0.0)) throw InvalidParameter("D_list entries must be >= 0");
    if (n_trials < 1) throw InvalidParameter("n_trials must be >= 1");
    if (decimation < 1) throw InvalidParameter("decimation must be >= 1");
    if (!(window_fraction > 0.0 && window_fraction <= 0.5))
        throw InvalidParameter("window_fraction must be in (0, 0.5]");
    if (!(u_init != 0.0) || !std::isfinite(u_init))
        throw InvalidParameter("u_init must be finite and nonzero");
}

}  // namespace ddehopf::cli
