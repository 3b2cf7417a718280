#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "predprey/integrators.hpp"
#include "predprey/spatial.hpp"

namespace predprey {

/// `# meta: key=value` lines, then the header `t,r,c`, then one row per
/// sample with 17 significant digits. Parsing recovers every sample bit-exactly.
std::string format_trajectory_csv(const Trajectory& traj);
Trajectory parse_trajectory_csv(std::string_view text);

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

/// One grid row (fixed y) per line.
void write_grid_csv(const Grid2& grid, const std::filesystem::path& path);

/// Binary 8-bit PGM (P5), scaled linearly from [0, max] of this grid.
void write_pgm(const Grid2& grid, const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, std::string_view text);

} // namespace predprey
