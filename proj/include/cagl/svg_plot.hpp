#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cagl {

/// One polyline of an SVG chart. x and y must have equal length; NaN y
/// values break the line.
struct plot_series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    bool dashed = false;
};

/// Minimal dependency-free line chart, enough to eyeball trajectories and
/// estimator sweeps next to the CSVs they mirror.
void write_svg_line_chart(const std::filesystem::path& path, const std::string& title,
                          const std::string& x_label, const std::string& y_label,
                          const std::vector<plot_series>& series, int width = 900,
                          int height = 540);

} // namespace cagl
