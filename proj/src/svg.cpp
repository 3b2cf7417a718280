#include "predprey/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "predprey/error.hpp"
#include "predprey/io.hpp"

namespace predprey {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string num(double x, const char* format = "%.2f") {
    char buf[48];
    std::snprintf(buf, sizeof buf, format, x);
    return buf;
}

std::string escape_xml(const std::string& text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    void widen_if_flat() {
        if (hi > lo) return;
        const double pad = lo == 0.0 ? 1.0 : 0.5 * std::abs(lo);
        lo -= pad;
        hi += pad;
    }
};

// Step of 1, 2 or 5 times a power of ten giving roughly `target` intervals.
double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    const double step = frac < 1.5 ? 1.0 : frac < 3.5 ? 2.0 : frac < 7.5 ? 5.0 : 10.0;
    return step * mag;
}

std::vector<double> ticks(const Range& range, int target) {
    const double step = nice_step(range.hi - range.lo, target);
    std::vector<double> out;
    for (double v = std::ceil(range.lo / step - 1e-9) * step; v <= range.hi + 1e-9 * step; v += step) {
        out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    }
    return out;
}

} // namespace

std::string render_svg(std::span<const PlotSeries> series, const PlotLabels& labels) {
    if (series.empty()) throw Error(ErrorKind::invalid_input, "plot needs at least one series");
    Range xr, yr;
    for (const PlotSeries& s : series) {
        if (s.x.empty() || s.x.size() != s.y.size()) {
            throw Error(ErrorKind::invalid_input, "series '" + s.name + "' is empty or has mismatched x/y lengths");
        }
        for (double v : s.x) xr.include(v);
        for (double v : s.y) yr.include(v);
    }
    xr.widen_if_flat();
    yr.widen_if_flat();

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    const auto py = [&](double y) { return kTop + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * plot_h; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth, "%.0f") + "\" height=\"" +
           num(kHeight, "%.0f") + "\" viewBox=\"0 0 " + num(kWidth, "%.0f") + " " + num(kHeight, "%.0f") + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!labels.title.empty()) {
        out += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"15\">" + escape_xml(labels.title) + "</text>\n";
    }

    out += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (double t : ticks(xr, 8)) {
        const double x = px(t);
        out += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(x) + "\" y2=\"" + num(kTop + plot_h) +
               "\" stroke=\"#e5e5e5\"/>\n";
        out += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + plot_h + 16) + "\" text-anchor=\"middle\">" +
               num(t, "%g") + "</text>\n";
    }
    for (double t : ticks(yr, 6)) {
        const double y = py(t);
        out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft + plot_w) + "\" y2=\"" + num(y) +
               "\" stroke=\"#e5e5e5\"/>\n";
        out += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" + num(t, "%g") +
               "</text>\n";
    }
    out += "</g>\n";
    out += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(plot_w) + "\" height=\"" +
           num(plot_h) + "\" fill=\"none\" stroke=\"#333\"/>\n";
    out += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 10) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + escape_xml(labels.x_axis) +
           "</text>\n";
    out += "<text x=\"18\" y=\"" + num(kTop + plot_h / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\" transform=\"rotate(-90 18 " + num(kTop + plot_h / 2) + ")\">" +
           escape_xml(labels.y_axis) + "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const PlotSeries& s = series[i];
        const char* colour = kPalette[i % kPalette.size()];
        out += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            if (k > 0) out += ' ';
            out += num(px(s.x[k])) + "," + num(py(s.y[k]));
        }
        out += "\"/>\n";

        const double ly = kTop + 10.0 + 20.0 * static_cast<double>(i);
        const double lx = kLeft + plot_w + 12.0;
        out += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 24) + "\" y2=\"" + num(ly) +
               "\" stroke=\"" + colour + "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + num(lx + 30) + "\" y=\"" + num(ly + 4) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + escape_xml(s.name) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

void plot_svg(std::span<const PlotSeries> series, const PlotLabels& labels, const std::filesystem::path& path) {
    write_text_file(path, render_svg(series, labels));
}

} // namespace predprey
