#include "weightlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace weightlab::svg {
namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 64, kRight = 616, kTop = 40, kBottom = 380;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fixed3(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

std::string tick_label(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

struct Range {
    double lo, hi;
    double map(double v, double a, double b) const { return a + (v - lo) / (hi - lo) * (b - a); }
};

Range span_of(const std::vector<Series>& series, bool y_axis) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& s : series)
        for (const auto& [px, py] : s.points) {
            double v = y_axis ? py : px;
            if (!std::isfinite(v)) throw std::invalid_argument("render_plot: non-finite coordinate");
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (lo == hi) {
        double pad = lo == 0 ? 1.0 : std::abs(lo) * 0.5;
        lo -= pad;
        hi += pad;
    }
    return {lo, hi};
}

void escape_into(std::string& out, const std::string& text) {
    for (char c : text) {
        if (c == '&')
            out += "&amp;";
        else if (c == '<')
            out += "&lt;";
        else if (c == '>')
            out += "&gt;";
        else
            out += c;
    }
}

}  // namespace

std::string render_plot(const std::vector<Series>& series, const std::string& title,
                        const std::string& x_label, const std::string& y_label) {
    if (series.empty()) throw std::invalid_argument("render_plot: no series");
    for (const auto& s : series)
        if (s.points.empty()) throw std::invalid_argument("render_plot: empty series");

    Range xr = span_of(series, false), yr = span_of(series, true);
    auto sx = [&](double x) { return xr.map(x, kLeft, kRight); };
    auto sy = [&](double y) { return yr.map(y, kBottom, kTop); };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" "
           "viewBox=\"0 0 640 420\">\n";
    out += "<rect width=\"640\" height=\"420\" fill=\"#ffffff\"/>\n";
    out += "<text x=\"320\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">";
    escape_into(out, title);
    out += "</text>\n";

    // Axes and ticks.
    out += "<line x1=\"" + fixed3(kLeft) + "\" y1=\"" + fixed3(kBottom) + "\" x2=\"" +
           fixed3(kRight) + "\" y2=\"" + fixed3(kBottom) + "\" stroke=\"#333333\"/>\n";
    out += "<line x1=\"" + fixed3(kLeft) + "\" y1=\"" + fixed3(kTop) + "\" x2=\"" + fixed3(kLeft) +
           "\" y2=\"" + fixed3(kBottom) + "\" stroke=\"#333333\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        double fx = xr.lo + (xr.hi - xr.lo) * t / 4;
        double fy = yr.lo + (yr.hi - yr.lo) * t / 4;
        out += "<line x1=\"" + fixed3(sx(fx)) + "\" y1=\"" + fixed3(kBottom) + "\" x2=\"" +
               fixed3(sx(fx)) + "\" y2=\"" + fixed3(kBottom + 5) + "\" stroke=\"#333333\"/>\n";
        out += "<text x=\"" + fixed3(sx(fx)) + "\" y=\"" + fixed3(kBottom + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               tick_label(fx) + "</text>\n";
        out += "<line x1=\"" + fixed3(kLeft - 5) + "\" y1=\"" + fixed3(sy(fy)) + "\" x2=\"" +
               fixed3(kLeft) + "\" y2=\"" + fixed3(sy(fy)) + "\" stroke=\"#333333\"/>\n";
        out += "<text x=\"" + fixed3(kLeft - 8) + "\" y=\"" + fixed3(sy(fy) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               tick_label(fy) + "</text>\n";
    }
    out += "<text x=\"" + fixed3((kLeft + kRight) / 2) + "\" y=\"412\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"12\">";
    escape_into(out, x_label);
    out += "</text>\n";
    out += "<text x=\"16\" y=\"" + fixed3((kTop + kBottom) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " +
           fixed3((kTop + kBottom) / 2) + ")\">";
    escape_into(out, y_label);
    out += "</text>\n";

    for (size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
        const auto& pts = series[si].points;
        if (pts.size() > 1) {
            out += "<polyline fill=\"none\" stroke=\"";
            out += color;
            out += "\" stroke-width=\"1.5\" points=\"";
            for (size_t i = 0; i < pts.size(); ++i) {
                if (i) out += ' ';
                out += fixed3(sx(pts[i].first)) + "," + fixed3(sy(pts[i].second));
            }
            out += "\"/>\n";
        }
        for (const auto& [px, py] : pts)
            out += "<circle cx=\"" + fixed3(sx(px)) + "\" cy=\"" + fixed3(sy(py)) +
                   "\" r=\"3\" fill=\"" + color + "\"/>\n";
        // Legend entry, stacked top-right.
        double ly = kTop + 14 + 16 * static_cast<double>(si);
        out += "<rect x=\"" + fixed3(kRight - 140) + "\" y=\"" + fixed3(ly - 9) +
               "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
        out += "<text x=\"" + fixed3(kRight - 126) + "\" y=\"" + fixed3(ly) +
               "\" font-family=\"sans-serif\" font-size=\"11\">";
        escape_into(out, series[si].label);
        out += "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

void write_plot(const std::vector<Series>& series, const std::string& title,
                const std::string& x_label, const std::string& y_label, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << render_plot(series, title, x_label, y_label);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace weightlab::svg
