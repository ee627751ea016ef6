#pragma once

#include <string>
#include <vector>

namespace heat {

struct Series {
    std::string label;
    std::vector<double> xs;
    std::vector<double> ys;
};

struct SvgOptions {
    std::string title;
    std::string x_label = "k";
    std::string y_label = "value";
    int width = 800;
    int height = 600;
};

/// Standalone SVG with one polyline per series, axes autoscaled to the data
/// extents. Output is a pure function of the inputs (fixed-precision
/// coordinate formatting), so identical data gives identical bytes.
void emit_svg_lines(const std::vector<Series>& series, const std::string& path,
                    const SvgOptions& opts = {});

/// The rendered document as a string; emit_svg_lines writes exactly this.
std::string render_svg_lines(const std::vector<Series>& series,
                             const SvgOptions& opts = {});

}  // namespace heat
