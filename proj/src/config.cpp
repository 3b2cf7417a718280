#include "predprey/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "predprey/error.hpp"

namespace predprey {

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::configuration, msg); }

std::string scalar_text(const toml::node& node, std::string_view key) {
    std::ostringstream os;
    if (const auto* s = node.as_string()) return s->get();
    if (const auto* i = node.as_integer()) return std::to_string(i->get());
    if (const auto* f = node.as_floating_point()) {
        os.precision(17);
        os << f->get();
        return os.str();
    }
    if (const auto* b = node.as_boolean()) return b->get() ? "true" : "false";
    config_error("metadata." + std::string(key) + " must be a string, number or boolean");
}

// Reads the keys of one section, rejecting any key not in `allowed`.
class Section {
public:
    Section(const toml::table* table, std::string name, std::set<std::string> allowed)
        : table_(table), name_(std::move(name)) {
        if (!table_) return;
        for (const auto& [key, node] : *table_) {
            const std::string k(key.str());
            if (!allowed.contains(k)) config_error("unknown key '" + qualified(k) + "'");
        }
    }

    std::string qualified(std::string_view key) const { return name_ + "." + std::string(key); }

    void read(std::string_view key, double& out) const {
        const toml::node* node = find(key);
        if (!node) return;
        if (const auto* f = node->as_floating_point()) {
            out = f->get();
        } else if (const auto* i = node->as_integer()) {
            out = static_cast<double>(i->get());
        } else {
            config_error(qualified(key) + " must be a number");
        }
        if (!std::isfinite(out)) config_error(qualified(key) + " must be finite");
    }

    void read(std::string_view key, int& out) const {
        const toml::node* node = find(key);
        if (!node) return;
        const auto* i = node->as_integer();
        if (!i) config_error(qualified(key) + " must be an integer");
        out = static_cast<int>(i->get());
    }

    void read(std::string_view key, std::uint64_t& out) const {
        const toml::node* node = find(key);
        if (!node) return;
        const auto* i = node->as_integer();
        if (!i || i->get() < 0) config_error(qualified(key) + " must be a nonnegative integer");
        out = static_cast<std::uint64_t>(i->get());
    }

    void read(std::string_view key, bool& out) const {
        const toml::node* node = find(key);
        if (!node) return;
        const auto* b = node->as_boolean();
        if (!b) config_error(qualified(key) + " must be true or false");
        out = b->get();
    }

    void read(std::string_view key, std::string& out) const {
        const toml::node* node = find(key);
        if (!node) return;
        const auto* s = node->as_string();
        if (!s) config_error(qualified(key) + " must be a string");
        out = s->get();
    }

    bool has(std::string_view key) const { return find(key) != nullptr; }

private:
    const toml::node* find(std::string_view key) const { return table_ ? table_->get(key) : nullptr; }

    const toml::table* table_;
    std::string name_;
};

const toml::table* sub_table(const toml::table& root, std::string_view name) {
    const toml::node* node = root.get(name);
    if (!node) return nullptr;
    const toml::table* table = node->as_table();
    if (!table) config_error("'" + std::string(name) + "' must be a table");
    return table;
}

InitialField initial_field_from_string(const std::string& name) {
    if (name == "uniform") return InitialField::uniform;
    if (name == "perturbed") return InitialField::perturbed;
    if (name == "zero") return InitialField::zero;
    config_error("grid.initial must be one of uniform, perturbed, zero (got '" + name + "')");
}

template <class Fn>
void with_prefix(const std::string& prefix, Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::configuration) throw;
        config_error(prefix + e.what());
    }
}

} // namespace

std::string_view to_string(InitialField kind) noexcept {
    switch (kind) {
    case InitialField::uniform: return "uniform";
    case InitialField::perturbed: return "perturbed";
    case InitialField::zero: return "zero";
    }
    return "uniform";
}

RunConfig default_run_config() {
    RunConfig cfg;
    cfg.model.beta = 0.2;
    cfg.model.alpha = 1.0;
    cfg.model.delta = 0.066;
    cfg.model.q = 1.0;
    cfg.model.effort_E = 0.125;
    cfg.model.sigma = 0.1;
    cfg.model.rho = 0.05;
    cfg.model.mu = 0.05;

    cfg.disturbance.amp_prey_A = 1.0;
    cfg.disturbance.amp_pred_Abar = 1.0;
    cfg.disturbance.omega = 2.0 * std::numbers::pi / 12.0;
    cfg.disturbance.phi = std::numbers::pi / 4.0;

    cfg.integration.method = Method::rk4;
    cfg.integration.t0 = 0.0;
    cfg.integration.t1 = 120.0;
    cfg.integration.dt = 0.05;
    cfg.integration.sample_every = 0.05;
    cfg.integration.abs_tol = 1e-9;
    cfg.integration.rel_tol = 1e-9;
    cfg.integration.clamp_negative = true;
    cfg.initial = {2.0, 1.0};
    return cfg;
}

void validate(const RunConfig& config) {
    with_prefix("model.", [&] { validate(config.model); });
    with_prefix("disturbance.", [&] { validate(config.disturbance); });
    validate(config.integration, config.disturbance.noise);
    if (!std::isfinite(config.initial.r) || config.initial.r < 0.0) config_error("integration.r0 must be >= 0");
    if (!std::isfinite(config.initial.c) || config.initial.c < 0.0) config_error("integration.c0 must be >= 0");
    if (config.grid) {
        validate(config.grid->grid);
        if (!(config.grid->snapshot_every >= config.integration.dt * (1.0 - 1e-12))) {
            config_error("grid.snapshot_every must be >= integration.dt");
        }
        if (!(config.grid->perturbation >= 0.0)) config_error("grid.perturbation must be >= 0");
        if (config.disturbance.noise.kind != NoiseKind::none) {
            config_error("disturbance.noise.kind must be \"none\" when a [grid] section is present");
        }
    }
}

RunConfig parse_config(std::string_view toml_text, std::string_view source_name) {
    toml::table root;
    try {
        root = toml::parse(toml_text, source_name);
    } catch (const toml::parse_error& e) {
        std::ostringstream msg;
        msg << source_name << ":" << e.source().begin.line << ":" << e.source().begin.column << ": "
            << e.description();
        throw Error(ErrorKind::parse, msg.str());
    }

    static const std::set<std::string> top_level{"model", "disturbance", "integration", "grid", "output", "metadata"};
    for (const auto& [key, node] : root) {
        if (!top_level.contains(std::string(key.str()))) config_error("unknown section '" + std::string(key.str()) + "'");
    }

    RunConfig cfg = default_run_config();

    const Section model(sub_table(root, "model"), "model",
                        {"beta", "alpha", "delta", "q", "effort_E", "sigma", "rho", "mu"});
    model.read("beta", cfg.model.beta);
    model.read("alpha", cfg.model.alpha);
    model.read("delta", cfg.model.delta);
    model.read("q", cfg.model.q);
    model.read("effort_E", cfg.model.effort_E);
    model.read("sigma", cfg.model.sigma);
    model.read("rho", cfg.model.rho);
    model.read("mu", cfg.model.mu);

    const toml::table* dist_table = sub_table(root, "disturbance");
    const Section dist(dist_table, "disturbance", {"amp_prey_A", "amp_pred_Abar", "omega", "phi", "noise"});
    dist.read("amp_prey_A", cfg.disturbance.amp_prey_A);
    dist.read("amp_pred_Abar", cfg.disturbance.amp_pred_Abar);
    dist.read("omega", cfg.disturbance.omega);
    dist.read("phi", cfg.disturbance.phi);
    if (dist_table) {
        const Section noise(sub_table(*dist_table, "noise"), "disturbance.noise", {"kind", "intensity", "tau", "seed"});
        std::string kind(to_string(cfg.disturbance.noise.kind));
        noise.read("kind", kind);
        with_prefix("disturbance.noise.kind: ", [&] { cfg.disturbance.noise.kind = noise_kind_from_string(kind); });
        noise.read("intensity", cfg.disturbance.noise.intensity);
        noise.read("tau", cfg.disturbance.noise.tau);
        noise.read("seed", cfg.disturbance.noise.seed);
    }

    const Section integ(sub_table(root, "integration"), "integration",
                        {"method", "t0", "t1", "dt", "abs_tol", "rel_tol", "sample_every", "clamp_negative", "r0", "c0"});
    std::string method(to_string(cfg.integration.method));
    integ.read("method", method);
    try {
        cfg.integration.method = method_from_string(method);
    } catch (const Error& e) {
        config_error(std::string("integration.method: ") + e.what());
    }
    integ.read("t0", cfg.integration.t0);
    integ.read("t1", cfg.integration.t1);
    integ.read("dt", cfg.integration.dt);
    // sample_every follows dt unless given explicitly.
    cfg.integration.sample_every = cfg.integration.dt;
    integ.read("sample_every", cfg.integration.sample_every);
    integ.read("abs_tol", cfg.integration.abs_tol);
    integ.read("rel_tol", cfg.integration.rel_tol);
    integ.read("clamp_negative", cfg.integration.clamp_negative);
    integ.read("r0", cfg.initial.r);
    integ.read("c0", cfg.initial.c);

    if (const toml::table* grid_table = sub_table(root, "grid")) {
        const Section grid(grid_table, "grid",
                           {"nx", "ny", "h", "d1", "d2", "reaction", "snapshot_every", "initial", "perturbation", "seed"});
        PdeSetup setup;
        grid.read("nx", setup.grid.nx);
        grid.read("ny", setup.grid.ny);
        grid.read("h", setup.grid.h);
        grid.read("d1", setup.grid.d1);
        grid.read("d2", setup.grid.d2);
        grid.read("reaction", setup.grid.reaction);
        grid.read("snapshot_every", setup.snapshot_every);
        std::string initial(to_string(setup.initial));
        grid.read("initial", initial);
        setup.initial = initial_field_from_string(initial);
        grid.read("perturbation", setup.perturbation);
        grid.read("seed", setup.seed);
        cfg.grid = setup;
    }

    const Section output(sub_table(root, "output"), "output", {"trajectory_csv", "plot_svg", "pde_dir"});
    output.read("trajectory_csv", cfg.output.trajectory_csv);
    output.read("plot_svg", cfg.output.plot_svg);
    output.read("pde_dir", cfg.output.pde_dir);

    if (const toml::table* meta = sub_table(root, "metadata")) {
        for (const auto& [key, node] : *meta) cfg.metadata[std::string(key.str())] = scalar_text(node, key.str());
    }

    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path.string());
}

} // namespace predprey
