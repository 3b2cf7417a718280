#include "predprey/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <thread>

#include "predprey/analysis.hpp"
#include "predprey/equilibria.hpp"
#include "predprey/error.hpp"
#include "predprey/io.hpp"
#include "predprey/stability.hpp"
#include "predprey/svg.hpp"

namespace predprey {

namespace {

std::string num(double x) {
    if (x == 0.0) x = 0.0; // no "-0" in reports
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string complex_text(const std::complex<double>& z) {
    if (z.imag() == 0.0) return num(z.real());
    return num(z.real()) + (z.imag() < 0.0 ? " - " : " + ") + num(std::abs(z.imag())) + "i";
}

void print_report(std::ostream& out, const StabilityReport& rep, const std::string& indent) {
    out << indent << "eigenvalues: " << complex_text(rep.eigenvalues[0]) << ", " << complex_text(rep.eigenvalues[1])
        << "\n"
        << indent << "trace: " << num(rep.trace) << "  determinant: " << num(rep.determinant)
        << "  discriminant: " << num(rep.discriminant) << "\n"
        << indent << "class: " << to_string(rep.cls) << "\n";
}

double steady_metric(const Trajectory& traj, SweepMetric metric) {
    switch (metric) {
    case SweepMetric::mean_r:
    case SweepMetric::mean_c:
    case SweepMetric::var_r:
    case SweepMetric::var_c: {
        const double mid = 0.5 * (traj.times.front() + traj.times.back());
        const WindowStats s = windowed_stats(traj, mid, traj.times.back());
        return metric == SweepMetric::mean_r ? s.mean_r
               : metric == SweepMetric::mean_c ? s.mean_c
               : metric == SweepMetric::var_r  ? s.var_r
                                               : s.var_c;
    }
    case SweepMetric::period: {
        const OscillationReport rep = analyze(traj);
        return rep.dominant_period ? *rep.dominant_period : std::nan("");
    }
    case SweepMetric::lag:
        return analyze(traj).lag_rc;
    }
    return std::nan("");
}

RunConfig load_or_throw(const std::string& path) { return load_config(path); }

int cmd_simulate(const std::string& config_path, std::string out_path, std::string plot_path,
                 const std::optional<std::uint64_t>& seed, std::ostream& out) {
    RunConfig cfg = load_or_throw(config_path);
    if (seed) cfg.disturbance.noise.seed = *seed;
    if (out_path.empty()) out_path = cfg.output.trajectory_csv.empty() ? "trajectory.csv" : cfg.output.trajectory_csv;
    if (plot_path.empty()) plot_path = cfg.output.plot_svg;

    Trajectory traj = integrate(cfg.model, cfg.disturbance, cfg.integration, cfg.initial);
    traj.meta["clamp_events"] = std::to_string(traj.clamp_events.size());
    for (const auto& [key, value] : cfg.metadata) traj.meta["config." + key] = value;
    write_trajectory_csv(traj, out_path);

    if (!plot_path.empty()) {
        std::vector<PlotSeries> series(2);
        series[0].name = "prey r";
        series[1].name = "predator c";
        for (std::size_t i = 0; i < traj.size(); ++i) {
            series[0].x.push_back(traj.times[i]);
            series[0].y.push_back(traj.states[i].r);
            series[1].x.push_back(traj.times[i]);
            series[1].y.push_back(traj.states[i].c);
        }
        plot_svg(series, {"Population against time", "time", "population density"}, plot_path);
    }

    const State& last = traj.states.back();
    out << "samples: " << traj.size() << "\n"
        << "final time: " << num(traj.times.back()) << "\n"
        << "final state: r = " << num(last.r) << ", c = " << num(last.c) << "\n"
        << "clamp events: " << traj.clamp_events.size() << "\n";
    try {
        const OscillationReport rep = analyze(traj);
        if (rep.dominant_period) {
            out << "dominant period (prey, steady window): " << num(*rep.dominant_period) << "\n";
        } else {
            out << "dominant period (prey, steady window): no oscillation detected\n";
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::insufficient_data) throw;
        out << "dominant period (prey, steady window): n/a (" << e.what() << ")\n";
    }
    out << "trajectory: " << out_path << "\n";
    if (!plot_path.empty()) out << "plot: " << plot_path << "\n";
    return kExitOk;
}

int cmd_equilibria(const std::string& config_path, double at_time, int grid_n, std::ostream& out) {
    const RunConfig cfg = load_or_throw(config_path);
    const NondimParams& p = cfg.model;

    const EquilibriumPoint trivial = trivial_equilibrium();
    out << "trivial: r = " << num(trivial.r_e) << ", c = " << num(trivial.c_e) << "\n";
    print_report(out, classify_equilibrium(p, trivial), "  ");

    const EquilibriumPoint quasi = forced_quasi_equilibrium(p, cfg.disturbance, at_time);
    out << "forced-quasi at t = " << num(at_time) << ": r = " << num(quasi.r_e) << ", c = " << num(quasi.c_e) << "\n";
    print_report(out, classify_equilibrium(p, quasi), "  ");
    const ProductLambdas product = product_lambda_diagnostics(p, quasi.state());
    out << "  product-lambda-1: " << num(product.lambda1) << "\n"
        << "  product-lambda-2: " << num(product.lambda2) << "\n";

    const SearchBox box{1.25 * std::max(p.beta, 0.1), 1.25 * std::max(p.sigma + p.rho, 0.1)};
    const auto roots = find_autonomous_equilibria(p, box, grid_n);
    out << "numeric (autonomous, box r <= " << num(box.r_max) << ", c <= " << num(box.c_max) << "): " << roots.size()
        << "\n";
    for (const EquilibriumPoint& e : roots) {
        out << "numeric: r = " << num(e.r_e) << ", c = " << num(e.c_e) << "\n";
        print_report(out, classify_equilibrium(p, e), "  ");
    }
    return kExitOk;
}

State parse_point(const std::string& text) {
    const std::size_t comma = text.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::invalid_input, "--at expects R,C (got '" + text + "')");
    const auto parse = [&](const std::string& part) {
        char* end = nullptr;
        const double v = std::strtod(part.c_str(), &end);
        if (part.empty() || end != part.c_str() + part.size() || !std::isfinite(v)) {
            throw Error(ErrorKind::invalid_input, "--at expects two finite numbers R,C (got '" + text + "')");
        }
        return v;
    };
    return {parse(text.substr(0, comma)), parse(text.substr(comma + 1))};
}

int cmd_stability(const std::string& config_path, const std::string& at, std::ostream& out) {
    const RunConfig cfg = load_or_throw(config_path);
    const State point = parse_point(at);
    const Jacobian2 j = jacobian(cfg.model, point);
    out << "point: r = " << num(point.r) << ", c = " << num(point.c) << "\n"
        << "jacobian: [[" << num(j.j11) << ", " << num(j.j12) << "], [" << num(j.j21) << ", " << num(j.j22)
        << "]]\n";
    print_report(out, eigen2(j), "");
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& param, double from, double to, int steps,
              const std::string& metric_name, const std::string& out_path, unsigned jobs, std::ostream& out) {
    const RunConfig cfg = load_or_throw(config_path);
    const SweepMetric metric = sweep_metric_from_string(metric_name);
    const auto points = run_sweep(cfg, param, from, to, steps, metric, jobs);

    std::string csv = "value," + metric_name + "\n";
    for (const SweepPoint& pt : points) {
        char buf[80];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", pt.value, pt.metric);
        csv += buf;
    }
    if (out_path.empty()) {
        out << csv;
    } else {
        write_text_file(out_path, csv);
        out << "sweep: " << points.size() << " runs written to " << out_path << "\n";
    }
    return kExitOk;
}

int cmd_pde(const std::string& config_path, std::string out_dir, std::ostream& out) {
    const RunConfig cfg = load_or_throw(config_path);
    if (!cfg.grid) throw Error(ErrorKind::configuration, "config has no [grid] section");
    if (out_dir.empty()) out_dir = cfg.output.pde_dir;
    if (out_dir.empty()) throw Error(ErrorKind::configuration, "no output directory (--out-dir or output.pde_dir)");

    const Field initial = make_initial_field(cfg);
    const auto snapshots = run_pde(cfg.model, cfg.disturbance, cfg.grid->grid, initial, cfg.integration.t1,
                                   cfg.integration.dt, cfg.grid->snapshot_every);

    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    std::string manifest = "index,time,r_csv,c_csv,r_pgm,c_pgm\n";
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
        char stem[32];
        std::snprintf(stem, sizeof stem, "snapshot_%04zu", i);
        const std::string base(stem);
        write_grid_csv(snapshots[i].r, dir / (base + "_r.csv"));
        write_grid_csv(snapshots[i].c, dir / (base + "_c.csv"));
        write_pgm(snapshots[i].r, dir / (base + "_r.pgm"));
        write_pgm(snapshots[i].c, dir / (base + "_c.pgm"));
        char row[64];
        std::snprintf(row, sizeof row, "%zu,%.17g,", i, snapshots[i].time);
        manifest += row + base + "_r.csv," + base + "_c.csv," + base + "_r.pgm," + base + "_c.pgm\n";
    }
    write_text_file(dir / "manifest.csv", manifest);

    const Field& last = snapshots.back();
    const auto [rmin, rmax] = std::minmax_element(last.r.data.begin(), last.r.data.end());
    const auto [cmin, cmax] = std::minmax_element(last.c.data.begin(), last.c.data.end());
    out << "snapshots: " << snapshots.size() << "\n"
        << "final time: " << num(last.time) << "\n"
        << "final prey range: [" << num(*rmin) << ", " << num(*rmax) << "]\n"
        << "final predator range: [" << num(*cmin) << ", " << num(*cmax) << "]\n"
        << "output: " << dir.string() << "\n";
    return kExitOk;
}

int cmd_analyze(const std::string& csv_path, bool full, std::ostream& out) {
    const Trajectory traj = read_trajectory_csv(csv_path);
    const OscillationReport rep = analyze(traj, !full);
    if (!rep.dominant_period) {
        out << "no oscillation detected\n";
    } else {
        out << "dominant_period: " << num(*rep.dominant_period) << "\n"
            << "dominant_frequency: " << num(rep.dominant_frequency) << "\n";
    }
    out << "peak_amplitude: " << num(rep.peak_amplitude) << "\n"
        << "predator_amplitude: " << num(rep.amplitude_c) << "\n"
        << "mean_r: " << num(rep.mean_r) << "\n"
        << "mean_c: " << num(rep.mean_c) << "\n"
        << "var_r: " << num(rep.var_r) << "\n"
        << "var_c: " << num(rep.var_c) << "\n"
        << "lag_rc: " << num(rep.lag_rc) << "\n"
        << "sharpness_r: " << num(rep.sharpness_r) << "\n"
        << "sharpness_c: " << num(rep.sharpness_c) << "\n";
    return kExitOk;
}

} // namespace

bool set_sweep_parameter(RunConfig& config, std::string_view name, double value) {
    NondimParams& m = config.model;
    Disturbance& d = config.disturbance;
    if (name == "beta") m.beta = value;
    else if (name == "alpha") m.alpha = value;
    else if (name == "delta") m.delta = value;
    else if (name == "q") m.q = value;
    else if (name == "effort_E") m.effort_E = value;
    else if (name == "sigma") m.sigma = value;
    else if (name == "rho") m.rho = value;
    else if (name == "mu") m.mu = value;
    else if (name == "amp_prey_A") d.amp_prey_A = value;
    else if (name == "amp_pred_Abar") d.amp_pred_Abar = value;
    else if (name == "omega") d.omega = value;
    else if (name == "phi") d.phi = value;
    else if (name == "noise_intensity") d.noise.intensity = value;
    else return false;
    return true;
}

SweepMetric sweep_metric_from_string(std::string_view name) {
    if (name == "mean_r") return SweepMetric::mean_r;
    if (name == "mean_c") return SweepMetric::mean_c;
    if (name == "var_r") return SweepMetric::var_r;
    if (name == "var_c") return SweepMetric::var_c;
    if (name == "period") return SweepMetric::period;
    if (name == "lag") return SweepMetric::lag;
    throw Error(ErrorKind::configuration, "unknown sweep metric '" + std::string(name) +
                                              "' (expected mean_r, mean_c, var_r, var_c, period or lag)");
}

std::vector<SweepPoint> run_sweep(const RunConfig& config, std::string_view param, double from, double to,
                                  int steps, SweepMetric metric, unsigned jobs) {
    if (steps < 2) throw Error(ErrorKind::configuration, "--steps must be >= 2");
    {
        RunConfig probe = config;
        if (!set_sweep_parameter(probe, param, from)) {
            throw Error(ErrorKind::configuration, "unknown sweep parameter '" + std::string(param) + "'");
        }
    }

    std::vector<RunConfig> runs(static_cast<std::size_t>(steps), config);
    std::vector<SweepPoint> points(runs.size());
    for (int i = 0; i < steps; ++i) {
        const double value = i + 1 == steps ? to : from + (to - from) * i / (steps - 1);
        set_sweep_parameter(runs[i], param, value);
        runs[i].disturbance.noise.seed = config.disturbance.noise.seed + static_cast<std::uint64_t>(i);
        validate(runs[i]);
        points[i].value = value;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(runs.size());
    const auto worker = [&] {
        for (std::size_t i = next++; i < runs.size(); i = next++) {
            try {
                const Trajectory traj =
                    integrate(runs[i].model, runs[i].disturbance, runs[i].integration, runs[i].initial);
                points[i].metric = steady_metric(traj, metric);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    jobs = std::clamp(jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : jobs, 1u,
                      static_cast<unsigned>(runs.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < jobs; ++w) pool.emplace_back(worker);
        worker();
    }
    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
    std::sort(points.begin(), points.end(), [](const SweepPoint& a, const SweepPoint& b) { return a.value < b.value; });
    return points;
}

Field make_initial_field(const RunConfig& config) {
    if (!config.grid) throw Error(ErrorKind::configuration, "config has no [grid] section");
    const PdeSetup& setup = *config.grid;
    const int nx = setup.grid.nx;
    const int ny = setup.grid.ny;
    Field f{Grid2(nx, ny), Grid2(nx, ny), config.integration.t0};
    if (setup.initial == InitialField::zero) return f;
    std::fill(f.r.data.begin(), f.r.data.end(), config.initial.r);
    std::fill(f.c.data.begin(), f.c.data.end(), config.initial.c);
    if (setup.initial == InitialField::perturbed) {
        std::mt19937_64 rng(setup.seed);
        std::uniform_real_distribution<double> jitter(-setup.perturbation, setup.perturbation);
        for (double& v : f.r.data) v = std::max(0.0, v + jitter(rng));
        for (double& v : f.c.data) v = std::max(0.0, v + jitter(rng));
    }
    return f;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Disturbed Lotka-Volterra predator-prey simulator", "predprey"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string plot_path;
    std::optional<std::uint64_t> seed;
    auto* simulate = app.add_subcommand("simulate", "Integrate the model and write a trajectory CSV");
    simulate->add_option("--config", config_path, "TOML run configuration")->required();
    simulate->add_option("--out", out_path, "Trajectory CSV path");
    simulate->add_option("--plot", plot_path, "SVG plot path");
    simulate->add_option("--seed", seed, "Noise seed override");

    double at_time = 0.0;
    int grid_n = 40;
    auto* equilibria = app.add_subcommand("equilibria", "Trivial, forced quasi- and numeric equilibria");
    equilibria->add_option("--config", config_path, "TOML run configuration")->required();
    equilibria->add_option("--at-time", at_time, "Time at which the forced quasi-equilibrium is evaluated");
    equilibria->add_option("--grid-n", grid_n, "Newton seed lattice size")->check(CLI::Range(8, 1000));

    std::string at_point;
    auto* stability = app.add_subcommand("stability", "Jacobian, eigenvalues and class at a point");
    stability->add_option("--config", config_path, "TOML run configuration")->required();
    stability->add_option("--at", at_point, "Point R,C")->required();

    std::string param;
    std::string metric;
    double from = 0.0;
    double to = 0.0;
    int steps = 2;
    unsigned jobs = 0;
    auto* sweep = app.add_subcommand("sweep", "Run one simulation per parameter value");
    sweep->add_option("--config", config_path, "TOML run configuration")->required();
    sweep->add_option("--param", param, "Parameter name")->required();
    sweep->add_option("--from", from, "First value")->required();
    sweep->add_option("--to", to, "Last value")->required();
    sweep->add_option("--steps", steps, "Number of values (>= 2)")->required();
    sweep->add_option("--metric", metric, "mean_r | mean_c | var_r | var_c | period | lag")->required();
    sweep->add_option("--out", out_path, "CSV path (default: standard output)");
    sweep->add_option("--jobs", jobs, "Parallel runs (default: available parallelism)");

    std::string out_dir;
    auto* pde = app.add_subcommand("pde", "2D reaction-diffusion run with CSV/PGM snapshots");
    pde->add_option("--config", config_path, "TOML run configuration with a [grid] section")->required();
    pde->add_option("--out-dir", out_dir, "Snapshot directory");

    std::string csv_path;
    bool full = false;
    auto* analyze_cmd = app.add_subcommand("analyze", "Oscillation report for a trajectory CSV");
    analyze_cmd->add_option("--csv", csv_path, "Trajectory CSV")->required();
    analyze_cmd->add_flag("--full", full, "Use the whole series instead of the second half");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*simulate) return cmd_simulate(config_path, out_path, plot_path, seed, out);
        if (*equilibria) return cmd_equilibria(config_path, at_time, grid_n, out);
        if (*stability) return cmd_stability(config_path, at_point, out);
        if (*sweep) return cmd_sweep(config_path, param, from, to, steps, metric, out_path, jobs, out);
        if (*pde) return cmd_pde(config_path, out_dir, out);
        if (*analyze_cmd) return cmd_analyze(csv_path, full, out);
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return is_numerical(e.kind()) ? kExitNumerical : kExitUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error (io): " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace predprey
