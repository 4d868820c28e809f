#pragma once

#include <string>
#include <utility>
#include <vector>

namespace weightlab::svg {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

// Self-contained line plot, 640x420 viewport, fixed palette, coordinates
// rounded to millipixels so reruns are byte-identical. Points are drawn in
// the order given; series must be nonempty with finite coordinates.
std::string render_plot(const std::vector<Series>& series, const std::string& title,
                        const std::string& x_label, const std::string& y_label);

void write_plot(const std::vector<Series>& series, const std::string& title,
                const std::string& x_label, const std::string& y_label, const std::string& path);

}  // namespace weightlab::svg
