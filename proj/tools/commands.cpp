#include "commands.hpp"

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ddehopf/experiments.hpp"
#include "run_config.hpp"

#ifndef DDEHOPF_VERSION
#define DDEHOPF_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;

namespace ddehopf::cli {

namespace {

std::string timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Derived quantities shared by the commands and recorded in every manifest.
struct Derived {
    ExpansionPoint expansion;
    HopfPoint hopf;
    std::vector<NoiseCorrection> corrections;  // one per D_list entry
};

Derived derive_all(const RunConfig& cfg, bool with_corrections) {
    Derived d{expand(cfg.gamma, cfg.slope), solve_hopf(cfg.tau), {}};
    if (with_corrections) {
        Sigma2Options sopts;
        sopts.dt = cfg.dt;
        for (std::size_t i = 0; i < cfg.D_list.size(); ++i)
            d.corrections.push_back(correction_for(d.hopf, d.expansion.kappa, d.expansion.nu,
                                                   cfg.eps, cfg.D_list[i], cfg.sigma2_horizon,
                                                   cfg.sigma2_realizations,
                                                   scan_sigma2_seed(cfg.seed, i), sopts));
    }
    return d;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
}

// The manifest is itself a valid config file: '#' metadata lines followed by
// the fully resolved key = value config, so re-running a command with
// `--config <dir>/manifest.txt` reproduces the run.
void write_manifest(const fs::path& dir, const std::string& command, const RunConfig& cfg,
                    const Derived& d) {
    std::string m;
    m += "# ddehopf manifest\n";
    m += "# version: " DDEHOPF_VERSION "\n";
    m += "# command: " + command + "\n";
    m += "# created: " + timestamp_utc() + "\n";
    m += "# derived: x_o = " + format_double(d.expansion.x_o) + "\n";
    m += "# derived: eta = " + format_double(d.expansion.eta) + "\n";
    m += "# derived: kappa = " + format_double(d.expansion.kappa) + "\n";
    m += "# derived: nu = " + format_double(d.expansion.nu) + "\n";
    m += "# derived: eta_c = " + format_double(d.hopf.eta_c) + "\n";
    m += "# derived: w_c = " + format_double(d.hopf.w_c) + "\n";
    m += "# derived: d = " + format_double(d.hopf.d.real()) + " + " +
         format_double(d.hopf.d.imag()) + "i\n";
    for (const auto& c : d.corrections)
        m += "# derived: D = " + format_double(c.D) + ": sigma2 = " + format_double(c.sigma2) +
             " (se " + format_double(c.meta.std_err) + "), c_o = " + format_double(c.c_o) +
             ", mu = " + format_double(c.mu) + ", eps_eff = " + format_double(c.eps_eff) + "\n";
    m += cfg.serialize();
    write_file(dir / "manifest.txt", m);
}

fs::path prepare_out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out);
    fs::create_directories(dir);
    return dir;
}

std::string hopf_csv(const HopfPoint& h) {
    std::string s = "tau,eta_c,w_c,re_d,im_d\n";
    s += format_double(h.tau) + "," + format_double(h.eta_c) + "," + format_double(h.w_c) + "," +
         format_double(h.d.real()) + "," + format_double(h.d.imag()) + "\n";
    return s;
}

std::string expand_csv(const ExpansionPoint& p) {
    const double f_xo = sigmoid_derivs(p.x_o, p.slope).f;
    std::string s = "x_o,f_xo,eta,kappa,nu\n";
    s += format_double(p.x_o) + "," + format_double(f_xo) + "," + format_double(p.eta) + "," +
         format_double(p.kappa) + "," + format_double(p.nu) + "\n";
    return s;
}

std::string sigma2_csv(const std::vector<NoiseCorrection>& cs) {
    std::string s = "D,sigma2,se,c_o,mu,eps_eff\n";
    for (const auto& c : cs)
        s += format_double(c.D) + "," + format_double(c.sigma2) + "," +
             format_double(c.meta.std_err) + "," + format_double(c.c_o) + "," +
             format_double(c.mu) + "," + format_double(c.eps_eff) + "\n";
    return s;
}

std::string scan_csv(const ScanTable& table) {
    std::string s =
        "eps,D,amp_noise_free,amp_ensemble,amp_corrected,sigma2,c_o,mu,eps_eff,n_trials,"
        "master_seed,status\n";
    for (const auto& r : table.rows) {
        std::string status = r.status;  // error text must not break the column count
        for (char& ch : status)
            if (ch == ',' || ch == '\n') ch = ';';
        s += format_double(r.eps) + "," + format_double(r.D) + "," +
             format_double(r.amp_noise_free) + "," + format_double(r.amp_ensemble) + "," +
             format_double(r.amp_corrected) + "," + format_double(r.sigma2) + "," +
             format_double(r.c_o) + "," + format_double(r.mu) + "," + format_double(r.eps_eff) +
             "," + std::to_string(r.n_trials) + "," + std::to_string(r.master_seed) + "," +
             status + "\n";
    }
    return s;
}

std::string fig1_script() {
    return R"(# Quenching of the ensemble-averaged oscillation near threshold.
# Run: gnuplot fig1.gp
set datafile separator ','
set key autotitle columnhead
set xlabel 'time'
set ylabel 'u'
plot 'trajectory.csv' using 1:2 with lines lc rgb 'red' title 'noise-free', \
     ''               using 1:3 with lines lc rgb 'gray40' title 'ensemble mean', \
     ''               using 1:5 with lines dashtype 2 lc rgb 'black' title 'corrected'
pause -1
)";
}

std::string fig2_script(const std::vector<double>& d_list) {
    std::string s = R"(# Bifurcation diagrams: noise-free / ensemble-averaged / corrected.
# Run: gnuplot fig2.gp
set datafile separator ','
set xlabel 'eps'
set ylabel 'amplitude'
set multiplot layout 3,1
)";
    const char* cols[3] = {"amp_noise_free", "amp_ensemble", "amp_corrected"};
    const char* titles[3] = {"noise-free", "ensemble average", "corrected"};
    for (int p = 0; p < 3; ++p) {
        s += std::string("set title '") + titles[p] + "'\nplot ";
        for (std::size_t i = 0; i < d_list.size(); ++i) {
            if (i) s += ", ";
            const std::string dv = format_double(d_list[i]);
            s += "'scan.csv' using (column('eps')):(column('D')==" + dv + " ? column('" +
                 cols[p] + "') : 1/0) with linespoints title 'D=" + dv + "'";
        }
        s += "\n";
    }
    s += "unset multiplot\npause -1\n";
    return s;
}

std::string fig3_script(const std::vector<double>& d_list) {
    const double d_max = *std::max_element(d_list.begin(), d_list.end());
    const std::string dv = format_double(d_max);
    std::string s = R"(# Amplitude-curve coalescence away from the bifurcation point.
# Run: gnuplot fig3.gp
set datafile separator ','
set xlabel 'eps'
set ylabel 'amplitude'
)";
    s += "plot 'scan.csv' using (column('eps')):(column('D')==" + dv +
         " ? column('amp_noise_free') : 1/0) with lines lc rgb 'red' title 'D=0', \\\n"
         "     'scan.csv' using (column('eps')):(column('D')==" +
         dv + " ? column('amp_ensemble') : 1/0) with lines lc rgb 'black' title 'D=" + dv +
         "'\npause -1\n";
    return s;
}

// --- commands ---------------------------------------------------------------

int cmd_hopf(const RunConfig& cfg, bool to_files, std::ostream& out) {
    const HopfPoint h = solve_hopf(cfg.tau);
    const std::string csv = hopf_csv(h);
    out << csv;
    if (to_files) {
        const fs::path dir = prepare_out_dir(cfg);
        write_manifest(dir, "hopf", cfg, Derived{expand(cfg.gamma, cfg.slope), h, {}});
        write_file(dir / "hopf.csv", csv);
    }
    return kExitOk;
}

int cmd_expand(const RunConfig& cfg, bool to_files, std::ostream& out) {
    const ExpansionPoint p = expand(cfg.gamma, cfg.slope);
    const std::string csv = expand_csv(p);
    out << csv;
    if (to_files) {
        const fs::path dir = prepare_out_dir(cfg);
        write_manifest(dir, "expand", cfg, Derived{p, solve_hopf(cfg.tau), {}});
        write_file(dir / "expand.csv", csv);
    }
    return kExitOk;
}

int cmd_sigma2(const RunConfig& cfg, bool to_files, std::ostream& out) {
    const Derived d = derive_all(cfg, true);
    const std::string csv = sigma2_csv(d.corrections);
    out << csv;
    if (to_files) {
        const fs::path dir = prepare_out_dir(cfg);
        write_manifest(dir, "sigma2", cfg, d);
        write_file(dir / "sigma2.csv", csv);
    }
    return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    RunConfig c = cfg;
    c.D_list = {c.D};
    const Derived d = derive_all(c, true);
    const NoiseCorrection& corr = d.corrections.front();

    const fs::path dir = prepare_out_dir(c);
    write_manifest(dir, "simulate", c, d);  // manifest lands before results

    const HistoryInit history = HistoryInit::constant(c.u_init);
    const auto det_spec = SystemSpec::polynomial(d.hopf.eta_c + c.eps, d.expansion.kappa,
                                                 d.expansion.nu, c.tau);
    const Trajectory det = integrate(det_spec, history, c.n_steps, c.dt, 0);

    EnsembleOptions eopts;
    eopts.n_trials = c.n_trials;
    eopts.n_steps = c.n_steps;
    eopts.dt = c.dt;
    eopts.master_seed = scan_cell_seed(c.seed, 0);
    eopts.history = history;
    const auto noisy_spec = SystemSpec::polynomial(d.hopf.eta_c + c.eps, d.expansion.kappa,
                                                   d.expansion.nu, c.tau, c.D);
    const EnsembleResult ens = ensemble_average(noisy_spec, eopts);

    const auto corr_spec = SystemSpec::corrected(d.hopf.eta_c, corr.eps_eff, d.expansion.kappa,
                                                 d.expansion.nu, corr.c_o, c.tau);
    const Trajectory corrected = integrate(corr_spec, history, c.n_steps, c.dt, 0);

    std::string csv = "t,u_deterministic,u_ensemble_mean,u_ensemble_se,u_corrected\n";
    for (std::size_t k = 0; k <= c.n_steps; k += c.decimation) {
        csv += format_double(static_cast<double>(k) * c.dt) + "," +
               format_double(det.samples[k]) + "," +
               format_double(ens.mean_trajectory.samples[k]) + "," +
               format_double(ens.std_err[k]) + "," + format_double(corrected.samples[k]) + "\n";
    }
    write_file(dir / "trajectory.csv", csv);
    write_file(dir / "fig1.gp", fig1_script());
    out << "wrote " << (dir / "trajectory.csv").string() << " (" << c.n_steps / c.decimation + 1
        << " rows), manifest.txt, fig1.gp\n";
    return kExitOk;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
    const Derived d = derive_all(cfg, true);
    const fs::path dir = prepare_out_dir(cfg);
    write_manifest(dir, "scan", cfg, d);

    ScanOptions sopts;
    sopts.n_trials = cfg.n_trials;
    sopts.n_steps = cfg.n_steps;
    sopts.dt = cfg.dt;
    sopts.u_init = cfg.u_init;
    sopts.window_fraction = cfg.window_fraction;
    sopts.master_seed = cfg.seed;
    sopts.sigma2_horizon = cfg.sigma2_horizon;
    sopts.sigma2_realizations = cfg.sigma2_realizations;

    const std::vector<double> eps_grid = cfg.eps_grid();
    const ScanTable table = scan(eps_grid, cfg.D_list, d.expansion, d.hopf, sopts);

    write_file(dir / "scan.csv", scan_csv(table));
    write_file(dir / "fig2.gp", fig2_script(cfg.D_list));
    write_file(dir / "fig3.gp", fig3_script(cfg.D_list));

    std::size_t failed = 0;
    for (const auto& r : table.rows)
        if (r.status != "ok") ++failed;
    out << "wrote " << (dir / "scan.csv").string() << " (" << table.rows.size() << " cells, "
        << failed << " failed), manifest.txt, fig2.gp, fig3.gp\n";
    return kExitOk;
}

int exit_code_for(const Error& e) {
    if (dynamic_cast<const Diverged*>(&e)) return kExitDiverged;
    if (dynamic_cast<const NoConvergence*>(&e) || dynamic_cast<const Unreachable*>(&e) ||
        dynamic_cast<const NoOnsetInRange*>(&e))
        return kExitNoConvergence;
    if (dynamic_cast<const InvalidParameter*>(&e) || dynamic_cast<const InvalidStep*>(&e) ||
        dynamic_cast<const NonCommensurateDelay*>(&e) ||
        dynamic_cast<const MissingParameter*>(&e) || dynamic_cast<const UnknownVariant*>(&e) ||
        dynamic_cast<const DegenerateGain*>(&e) ||
        dynamic_cast<const ResolutionTooCoarse*>(&e) ||
        dynamic_cast<const LengthMismatch*>(&e) || dynamic_cast<const WindowTooShort*>(&e))
        return kExitUsage;
    return kExitInternal;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ddehopf - noise-shifted Hopf bifurcations in a scalar delay equation"};
    app.footer(
        "Exit codes: 0 ok, 1 internal error, 2 usage/invalid input,\n"
        "            3 solver did not converge / target unreachable, 4 trajectory diverged.\n"
        "Config file: flat 'key = value' lines ('#' comments); flags win over the file.\n"
        "Environment: DDEHOPF_THREADS caps the worker pool (default: all cores).");
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "Config file (key = value); flags override it");
    std::uint64_t seed_flag = 0;
    auto* seed_opt = app.add_option("--seed", seed_flag, "Master seed");
    std::string out_flag;
    auto* out_opt = app.add_option("--out", out_flag, "Output directory");
    std::size_t trials_flag = 0;
    auto* trials_opt = app.add_option("--trials", trials_flag, "Ensemble trial count");

    auto* hopf_cmd = app.add_subcommand("hopf", "Locate the Hopf point for a delay");
    double tau_flag = 0.0;
    auto* tau_opt = hopf_cmd->add_option("--tau", tau_flag, "Delay (time units)");

    auto* expand_cmd =
        app.add_subcommand("expand", "Fixed point and cubic feedback coefficients");
    double gamma_flag = 0.0, slope_flag = 0.0;
    auto* gamma_opt = expand_cmd->add_option("--gamma", gamma_flag, "Feedback gain");
    auto* slope_opt = expand_cmd->add_option("--slope", slope_flag, "Sigmoid steepness");

    auto* sigma2_cmd =
        app.add_subcommand("sigma2", "Noise-correction parameters per noise intensity");
    std::vector<double> dlist_flag;
    auto* dlist_opt =
        sigma2_cmd->add_option("--D-list", dlist_flag, "Noise intensities (comma separated)")
            ->delimiter(',');
    double eps_flag_s = 0.0;
    auto* eps_opt_s = sigma2_cmd->add_option("--eps", eps_flag_s, "Control parameter");

    auto* simulate_cmd = app.add_subcommand(
        "simulate", "Deterministic / ensemble-mean / corrected trajectories at one (eps, D)");
    double eps_flag = 0.0, d_flag = 0.0;
    auto* eps_opt = simulate_cmd->add_option("--eps", eps_flag, "Control parameter");
    auto* d_opt = simulate_cmd->add_option("--D", d_flag, "Noise intensity");
    std::size_t steps_flag = 0;
    auto* steps_opt = simulate_cmd->add_option("--steps", steps_flag, "Integration steps");

    auto* scan_cmd = app.add_subcommand("scan", "(eps, D) sweep producing the scan table");
    double emin_flag = 0.0, emax_flag = 0.0, estep_flag = 0.0;
    auto* emin_opt = scan_cmd->add_option("--eps-min", emin_flag, "Sweep start");
    auto* emax_opt = scan_cmd->add_option("--eps-max", emax_flag, "Sweep end");
    auto* estep_opt = scan_cmd->add_option("--eps-step", estep_flag, "Sweep step");
    std::size_t steps_flag2 = 0;
    auto* steps_opt2 = scan_cmd->add_option("--steps", steps_flag2, "Integration steps");

    // global flags may follow the subcommand
    for (auto* sub : {hopf_cmd, expand_cmd, sigma2_cmd, simulate_cmd, scan_cmd})
        sub->fallthrough();

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("ddehopf");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = RunConfig::from_file(config_path);
        if (seed_opt->count()) cfg.seed = seed_flag;
        if (out_opt->count()) cfg.out = out_flag;
        if (trials_opt->count()) cfg.n_trials = trials_flag;
        if (tau_opt->count()) cfg.tau = tau_flag;
        if (gamma_opt->count()) cfg.gamma = gamma_flag;
        if (slope_opt->count()) cfg.slope = slope_flag;
        if (dlist_opt->count()) cfg.D_list = dlist_flag;
        if (eps_opt_s->count()) cfg.eps = eps_flag_s;
        if (eps_opt->count()) cfg.eps = eps_flag;
        if (d_opt->count()) cfg.D = d_flag;
        if (steps_opt->count()) cfg.n_steps = steps_flag;
        if (emin_opt->count()) cfg.eps_min = emin_flag;
        if (emax_opt->count()) cfg.eps_max = emax_flag;
        if (estep_opt->count()) cfg.eps_step = estep_flag;
        if (steps_opt2->count()) cfg.n_steps = steps_flag2;
        cfg.validate();

        const bool to_files = out_opt->count() > 0;
        if (hopf_cmd->parsed()) return cmd_hopf(cfg, to_files, out);
        if (expand_cmd->parsed()) return cmd_expand(cfg, to_files, out);
        if (sigma2_cmd->parsed()) return cmd_sigma2(cfg, to_files, out);
        if (simulate_cmd->parsed()) return cmd_simulate(cfg, out);
        if (scan_cmd->parsed()) return cmd_scan(cfg, out);
        err << "no subcommand given\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace ddehopf::cli
