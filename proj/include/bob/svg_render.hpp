#pragma once

#include <string>
#include <vector>

#include "bob/dynamics.hpp"
#include "bob/geometry.hpp"

namespace bob {

struct SvgStyle {
    int width = 900;
    int height = 700;
    Scalar point_radius = 1.2; ///< pixels
    bool draw_shape = true;
    bool draw_bounces = false;
    std::vector<std::string> palette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                        "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"};
};

/// Standalone SVG 1.1 document: shape outline plus one point cloud per orbit,
/// one palette color per orbit, viewport auto-fitted with a 5% margin.
/// Output is byte-deterministic for identical inputs.
std::string render_svg(const Shape& shape, const std::vector<OrbitRecord>& orbits,
                       const SvgStyle& style = {});

} // namespace bob
