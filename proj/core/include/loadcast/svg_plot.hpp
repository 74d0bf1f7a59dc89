#pragma once

#include <string>
#include <vector>

#include "loadcast/calendar.hpp"

namespace loadcast::plot {

struct PlotInput {
    std::string title;
    std::vector<Hour> times;
    std::vector<double> forecast;
    std::vector<double> actual;  ///< empty or aligned with forecast
    std::vector<double> lower;   ///< interval band; empty or aligned
    std::vector<double> upper;
};

/// Self-contained SVG line chart. Throws std::invalid_argument on an empty
/// series and AlignmentError when the optional series have the wrong length.
[[nodiscard]] std::string render_svg(const PlotInput& input, int width = 1000, int height = 420);

}  // namespace loadcast::plot
