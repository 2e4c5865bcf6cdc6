#pragma once

#include <string>
#include <vector>

namespace sgefem {

// Minimal self-contained SVG line plots; presentation only, never load-bearing.
struct PlotSeries {
    std::string label;
    std::vector<double> x, y;
    std::string color = "#1f77b4";
    bool dashed = false;
    bool markers = true;
};

struct PlotSpec {
    std::string title, xlabel, ylabel;
    bool logx = false;
    bool logy = false;
    int width = 640, height = 480;
};

std::string render_svg_plot(const PlotSpec& spec, const std::vector<PlotSeries>& series);
void write_svg_plot(const std::string& path, const PlotSpec& spec,
                    const std::vector<PlotSeries>& series);

} // namespace sgefem
