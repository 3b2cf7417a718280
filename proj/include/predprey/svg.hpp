#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace predprey {

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotLabels {
    std::string title;
    std::string x_axis;
    std::string y_axis;
};

/// Self-contained SVG: one polyline per series, legend, linear axes with
/// tick labels. Output depends only on the input.
std::string render_svg(std::span<const PlotSeries> series, const PlotLabels& labels);

void plot_svg(std::span<const PlotSeries> series, const PlotLabels& labels, const std::filesystem::path& path);

} // namespace predprey
