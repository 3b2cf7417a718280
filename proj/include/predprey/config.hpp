#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "predprey/integrators.hpp"
#include "predprey/model.hpp"
#include "predprey/spatial.hpp"

namespace predprey {

enum class InitialField { uniform, perturbed, zero };

std::string_view to_string(InitialField kind) noexcept;

/// Spatial run settings; time stepping comes from the integration section.
struct PdeSetup {
    GridSpec grid;
    double snapshot_every = 1.0;
    InitialField initial = InitialField::uniform;
    double perturbation = 0.0; ///< amplitude of uniform [-a, a] noise for the perturbed field
    std::uint64_t seed = 0;
};

struct OutputPaths {
    std::string trajectory_csv;
    std::string plot_svg;
    std::string pde_dir;
};

struct RunConfig {
    NondimParams model;
    Disturbance disturbance;
    IntegrationSpec integration;
    State initial{2.0, 1.0};
    std::optional<PdeSetup> grid;
    OutputPaths output;
    std::map<std::string, std::string> metadata;
};

/// Built-in defaults: the published simulation parameter set with alpha = 1.
RunConfig default_run_config();

/// Parses the TOML schema ([model], [disturbance], [disturbance.noise],
/// [integration], [grid], [output], [metadata]). Keys left out keep their
/// defaults; unknown keys are rejected. Every failure names its key.
RunConfig parse_config(std::string_view toml_text, std::string_view source_name = "config");

RunConfig load_config(const std::filesystem::path& path);

/// Checks every component; throws ErrorKind::configuration naming the key.
void validate(const RunConfig& config);

} // namespace predprey
