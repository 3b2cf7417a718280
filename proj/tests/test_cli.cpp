#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "predprey/cli.hpp"
#include "predprey/config.hpp"
#include "predprey/integrators.hpp"
#include "predprey/io.hpp"

using namespace predprey;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path workdir() {
    const fs::path dir = fs::temp_directory_path() / "predprey_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string write_config(const std::string& name, const std::string& text) {
    const fs::path path = workdir() / name;
    std::ofstream(path) << text;
    return path.string();
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const std::string kDefault = std::string(PREDPREY_CONFIG_DIR) + "/default.toml";

double value_after(const std::string& text, const std::string& key) {
    const auto pos = text.find(key);
    REQUIRE(pos != std::string::npos);
    return std::stod(text.substr(pos + key.size()));
}

} // namespace

TEST_CASE("simulate writes a deterministic trajectory and plot") {
    const fs::path csv1 = workdir() / "a.csv", csv2 = workdir() / "b.csv";
    const fs::path svg1 = workdir() / "a.svg", svg2 = workdir() / "b.svg";
    const CliResult r1 = run({"simulate", "--config", kDefault, "--out", csv1.string(), "--plot", svg1.string()});
    const CliResult r2 = run({"simulate", "--config", kDefault, "--out", csv2.string(), "--plot", svg2.string()});
    REQUIRE(r1.code == 0);
    REQUIRE(r2.code == 0);
    CHECK(r1.out.find("samples: 2401") != std::string::npos);
    const Trajectory traj = read_trajectory_csv(csv1);
    CHECK(traj.size() == 2401);
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == 120.0);
    CHECK(traj.meta.count("seed") == 1);
    CHECK(slurp(csv1) == slurp(csv2));
    CHECK(slurp(svg1) == slurp(svg2));
    CHECK(slurp(svg1).find("<polyline") != std::string::npos);
}

TEST_CASE("simulate errors map to exit codes") {
    const CliResult missing = run({"simulate", "--config", (workdir() / "absent.toml").string()});
    CHECK(missing.code == 1);
    CHECK(!missing.err.empty());
    CHECK(run({"simulate"}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"--help"}).code == 0);

    const std::string bad = write_config("bad_dt.toml", "[integration]\ndt = 0.0\n");
    const CliResult r = run({"simulate", "--config", bad, "--out", (workdir() / "x.csv").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("integration.dt") != std::string::npos);

    const std::string stiff = write_config("stiff.toml",
        "[integration]\nmethod = \"adaptive\"\nabs_tol = 1e-300\nrel_tol = 1e-300\nt1 = 1.0\n");
    CHECK(run({"simulate", "--config", stiff, "--out", (workdir() / "y.csv").string()}).code == 2);
}

TEST_CASE("simulate seed override changes noisy runs only through the seed") {
    const std::string noisy = write_config("noisy.toml",
        "[disturbance.noise]\nkind = \"white\"\nintensity = 0.05\nseed = 1\n"
        "[integration]\nmethod = \"euler-maruyama\"\nt1 = 20.0\n");
    const fs::path a = workdir() / "n1.csv", b = workdir() / "n2.csv", c = workdir() / "n3.csv";
    REQUIRE(run({"simulate", "--config", noisy, "--out", a.string(), "--seed", "5"}).code == 0);
    REQUIRE(run({"simulate", "--config", noisy, "--out", b.string(), "--seed", "5"}).code == 0);
    REQUIRE(run({"simulate", "--config", noisy, "--out", c.string(), "--seed", "6"}).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) != slurp(c));
    CHECK(read_trajectory_csv(a).meta.at("seed") == "5");
}

TEST_CASE("equilibria subcommand") {
    const CliResult r = run({"equilibria", "--config", kDefault, "--at-time", "9"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("trivial: r = 0, c = 0") != std::string::npos);
    CHECK(value_after(r.out, "forced-quasi at t = 9: r = ") == doctest::Approx(5.2151).epsilon(1e-4));
    CHECK(r.out.find("c = 14.14213562") != std::string::npos);

    const std::string unforced = write_config("unforced.toml", "[disturbance]\namp_prey_A = 0.0\namp_pred_Abar = 0.0\n");
    const CliResult u = run({"equilibria", "--config", unforced});
    REQUIRE(u.code == 0);
    CHECK(u.out.find(": r = 0, c = 0\n") != std::string::npos);

    const std::string degenerate = write_config("sigma_mu.toml", "[model]\nsigma = 0.05\nmu = 0.05\n");
    const CliResult d = run({"equilibria", "--config", degenerate});
    CHECK(d.code == 2);
    CHECK(d.err.find("predator") != std::string::npos);
}

TEST_CASE("stability subcommand") {
    const CliResult origin = run({"stability", "--config", kDefault, "--at", "0,0"});
    REQUIRE(origin.code == 0);
    CHECK(origin.out.find("eigenvalues: 0.19175, 0.05") != std::string::npos);
    CHECK(origin.out.find("class: unstable-node") != std::string::npos);

    const std::string decoupled = write_config("decoupled.toml",
        "[model]\nalpha = 0.0\nrho = 0.0\ndelta = 0.0\nsigma = 0.1\nmu = 0.0\nbeta = 0.2\n");
    const CliResult dc = run({"stability", "--config", decoupled, "--at", "0.2,0.1"});
    REQUIRE(dc.code == 0);
    CHECK(dc.out.find("eigenvalues: -0.1, -0.2") != std::string::npos);
    CHECK(dc.out.find("class: stable-node") != std::string::npos);

    const std::string zeros = write_config("zeros.toml",
        "[model]\nbeta = 0.0\nalpha = 0.0\ndelta = 0.0\nq = 0.0\neffort_E = 0.0\nsigma = 0.0\nrho = 0.0\nmu = 0.0\n");
    const CliResult z = run({"stability", "--config", zeros, "--at", "0,0"});
    REQUIRE(z.code == 0);
    CHECK(z.out.find("class: degenerate") != std::string::npos);

    CHECK(run({"stability", "--config", kDefault, "--at", "1;2"}).code == 1);
    CHECK(run({"stability", "--config", kDefault, "--at", "1,x"}).code == 1);
}

TEST_CASE("sweep subcommand") {
    const std::string shortened = write_config("sweep.toml", "[integration]\nt1 = 120.0\ndt = 0.05\n");
    const CliResult r = run({"sweep", "--config", shortened, "--param", "effort_E", "--from", "0", "--to", "0.5",
                             "--steps", "5", "--metric", "mean_r", "--jobs", "3"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "value,mean_r");
    std::vector<double> values, metrics;
    for (std::string line; std::getline(lines, line);) {
        const auto comma = line.find(',');
        values.push_back(std::stod(line.substr(0, comma)));
        metrics.push_back(std::stod(line.substr(comma + 1)));
    }
    REQUIRE(values.size() == 5);
    CHECK(values.front() == 0.0);
    CHECK(values.back() == 0.5);
    for (std::size_t i = 1; i < metrics.size(); ++i) CHECK(metrics[i] <= metrics[i - 1]);

    const fs::path out = workdir() / "sweep.csv";
    const CliResult two = run({"sweep", "--config", shortened, "--param", "omega", "--from", "0.5235987755982988",
                               "--to", "0.5235987755982988", "--steps", "2", "--metric", "period", "--out",
                               out.string()});
    REQUIRE(two.code == 0);
    const std::string csv = slurp(out);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    const double period = std::stod(csv.substr(csv.rfind(',') + 1));
    CHECK(std::abs(period - 12.0) <= 0.6);

    CHECK(run({"sweep", "--config", shortened, "--param", "nonsense", "--from", "0", "--to", "1", "--steps", "2",
               "--metric", "mean_r"})
              .code == 1);
    CHECK(run({"sweep", "--config", shortened, "--param", "beta", "--from", "0", "--to", "1", "--steps", "2",
               "--metric", "median"})
              .code == 1);
}

TEST_CASE("sweep results do not depend on the job count") {
    RunConfig cfg = default_run_config();
    cfg.integration.t1 = 30.0;
    cfg.integration.method = Method::euler_maruyama;
    cfg.disturbance.noise.kind = NoiseKind::white;
    cfg.disturbance.noise.intensity = 0.02;
    const auto serial = run_sweep(cfg, "effort_E", 0.0, 0.5, 6, SweepMetric::var_r, 1);
    const auto parallel = run_sweep(cfg, "effort_E", 0.0, 0.5, 6, SweepMetric::var_r, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].value == parallel[i].value);
        CHECK(serial[i].metric == parallel[i].metric);
    }
}

TEST_CASE("pde subcommand") {
    const std::string uniform = write_config("pde_uniform.toml",
        "[integration]\nt1 = 6.0\ndt = 0.05\nmethod = \"euler-maruyama\"\n"
        "[grid]\nnx = 8\nny = 8\nh = 1.0\nd1 = 0.1\nd2 = 0.1\nsnapshot_every = 3.0\ninitial = \"uniform\"\n");
    const fs::path dir = workdir() / "pde_uniform";
    fs::remove_all(dir);
    const CliResult r = run({"pde", "--config", uniform, "--out-dir", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("snapshots: 3") != std::string::npos);
    CHECK(fs::exists(dir / "manifest.csv"));
    CHECK(fs::exists(dir / "snapshot_0002_r.pgm"));

    RunConfig cfg = load_config(uniform);
    cfg.integration.sample_every = 6.0;
    const Trajectory ode = integrate(cfg.model, cfg.disturbance, cfg.integration, cfg.initial);
    std::ifstream last(dir / "snapshot_0002_r.csv");
    std::string row;
    while (std::getline(last, row)) {
        std::istringstream cells(row);
        for (std::string cell; std::getline(cells, cell, ',');) CHECK(std::abs(std::stod(cell) - ode.states.back().r) <= 1e-6);
    }

    const std::string cfl = write_config("pde_cfl.toml",
        "[integration]\nt1 = 1.0\ndt = 0.5\n[grid]\nnx = 8\nny = 8\nh = 1.0\nd1 = 1.0\nd2 = 0.1\n");
    const CliResult bad = run({"pde", "--config", cfl, "--out-dir", (workdir() / "pde_cfl").string()});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("0.225") != std::string::npos);

    const std::string zero = write_config("pde_zero.toml",
        "[disturbance]\namp_prey_A = 0.0\namp_pred_Abar = 0.0\n"
        "[integration]\nt1 = 2.0\ndt = 0.1\n[grid]\nnx = 6\nny = 6\ninitial = \"zero\"\nsnapshot_every = 1.0\n");
    const CliResult z = run({"pde", "--config", zero, "--out-dir", (workdir() / "pde_zero").string()});
    REQUIRE(z.code == 0);
    CHECK(z.out.find("final prey range: [0, 0]") != std::string::npos);
    CHECK(z.out.find("final predator range: [0, 0]") != std::string::npos);

    CHECK(run({"pde", "--config", kDefault, "--out-dir", (workdir() / "nogrid").string()}).code == 1);
}

TEST_CASE("analyze subcommand") {
    Trajectory sine;
    for (int i = 0; i <= 1200; ++i) {
        sine.times.push_back(0.1 * i);
        sine.states.push_back({1.0 + std::sin(2 * 3.141592653589793 * 0.1 * i / 12.0), 1.0});
    }
    const fs::path sine_csv = workdir() / "sine.csv";
    write_trajectory_csv(sine, sine_csv);
    const CliResult s = run({"analyze", "--csv", sine_csv.string(), "--full"});
    REQUIRE(s.code == 0);
    CHECK(std::abs(value_after(s.out, "dominant_period: ") - 12.0) <= 0.24);
    CHECK(std::abs(value_after(s.out, "mean_r: ") - 1.0) <= 1e-2);

    const fs::path sim = workdir() / "sim.csv";
    REQUIRE(run({"simulate", "--config", kDefault, "--out", sim.string()}).code == 0);
    const CliResult a = run({"analyze", "--csv", sim.string()});
    REQUIRE(a.code == 0);
    CHECK(std::abs(value_after(a.out, "dominant_period: ") - 12.0) <= 0.6);

    Trajectory flat;
    for (int i = 0; i < 100; ++i) {
        flat.times.push_back(i);
        flat.states.push_back({2.0, 1.0});
    }
    const fs::path flat_csv = workdir() / "flat.csv";
    write_trajectory_csv(flat, flat_csv);
    const CliResult f = run({"analyze", "--csv", flat_csv.string(), "--full"});
    REQUIRE(f.code == 0);
    CHECK(f.out.find("no oscillation detected") != std::string::npos);

    Trajectory tiny;
    for (int i = 0; i < 10; ++i) {
        tiny.times.push_back(i);
        tiny.states.push_back({1.0 * (i % 2), 1.0});
    }
    const fs::path tiny_csv = workdir() / "tiny.csv";
    write_trajectory_csv(tiny, tiny_csv);
    CHECK(run({"analyze", "--csv", tiny_csv.string()}).code == 1);
    CHECK(run({"analyze", "--csv", (workdir() / "nothing.csv").string()}).code == 1);
}
