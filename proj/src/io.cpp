#include "predprey/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "predprey/error.hpp"

namespace predprey {

namespace {

constexpr std::string_view kMetaPrefix = "# meta: ";
constexpr std::string_view kHeader = "t,r,c";

void append_number(std::string& out, double x) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
    out.append(buf, static_cast<std::size_t>(n));
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
    throw Error(ErrorKind::parse, "trajectory csv line " + std::to_string(line) + ": " + msg);
}

double parse_number(std::string_view field, std::size_t line) {
    const std::string text(field);
    if (text.empty()) parse_fail(line, "empty field");
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || (errno == ERANGE && std::isinf(value))) parse_fail(line, "malformed number '" + text + "'");
    return value;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

} // namespace

std::string format_trajectory_csv(const Trajectory& traj) {
    std::string out;
    out.reserve(64 * (traj.size() + traj.meta.size() + 1));
    for (const auto& [key, value] : traj.meta) {
        out += kMetaPrefix;
        out += key;
        out += '=';
        out += value;
        out += '\n';
    }
    out += kHeader;
    out += '\n';
    for (std::size_t i = 0; i < traj.size(); ++i) {
        append_number(out, traj.times[i]);
        out += ',';
        append_number(out, traj.states[i].r);
        out += ',';
        append_number(out, traj.states[i].c);
        out += '\n';
    }
    return out;
}

Trajectory parse_trajectory_csv(std::string_view text) {
    Trajectory traj;
    bool seen_header = false;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        if (line.front() == '#') {
            if (line.starts_with(kMetaPrefix)) {
                const std::string_view body = line.substr(kMetaPrefix.size());
                const std::size_t eq = body.find('=');
                if (eq == std::string_view::npos) parse_fail(line_no, "meta line without '='");
                traj.meta[std::string(body.substr(0, eq))] = std::string(body.substr(eq + 1));
            }
            continue;
        }
        if (!seen_header) {
            if (line != kHeader) parse_fail(line_no, "expected header 't,r,c'");
            seen_header = true;
            continue;
        }

        const std::size_t c1 = line.find(',');
        const std::size_t c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
            parse_fail(line_no, "expected 3 fields");
        }
        const double t = parse_number(line.substr(0, c1), line_no);
        const double r = parse_number(line.substr(c1 + 1, c2 - c1 - 1), line_no);
        const double c = parse_number(line.substr(c2 + 1), line_no);
        if (!traj.times.empty() && !(t > traj.times.back())) {
            throw Error(ErrorKind::parse,
                        "trajectory csv line " + std::to_string(line_no) + ": times must be strictly increasing");
        }
        traj.times.push_back(t);
        traj.states.push_back({r, c});
    }
    if (!seen_header) throw Error(ErrorKind::parse, "trajectory csv: missing header 't,r,c'");
    return traj;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, "cannot write '" + path.string() + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(ErrorKind::io, "write failed for '" + path.string() + "'");
}

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
    write_text_file(path, format_trajectory_csv(traj));
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) { return parse_trajectory_csv(read_file(path)); }

void write_grid_csv(const Grid2& grid, const std::filesystem::path& path) {
    std::string out;
    out.reserve(static_cast<std::size_t>(grid.nx) * grid.ny * 24);
    for (int y = 0; y < grid.ny; ++y) {
        for (int x = 0; x < grid.nx; ++x) {
            if (x > 0) out += ',';
            append_number(out, grid.at(x, y));
        }
        out += '\n';
    }
    write_text_file(path, out);
}

void write_pgm(const Grid2& grid, const std::filesystem::path& path) {
    const double top = grid.data.empty() ? 0.0 : *std::max_element(grid.data.begin(), grid.data.end());
    std::string out = "P5\n" + std::to_string(grid.nx) + " " + std::to_string(grid.ny) + "\n255\n";
    out.reserve(out.size() + grid.data.size());
    for (double v : grid.data) {
        const double scaled = top > 0.0 ? std::clamp(v / top, 0.0, 1.0) * 255.0 : 0.0;
        out += static_cast<char>(static_cast<unsigned char>(std::lround(scaled)));
    }
    write_text_file(path, out);
}

} // namespace predprey
