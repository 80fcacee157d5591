#pragma once

#include <chronoplot/render/scene.hpp>

#include <string>

namespace chronoplot::render {

// Serialises the scene as standalone SVG 1.1. Numbers use three decimals, so
// identical scenes give byte-identical documents.
std::string to_svg(const Scene& scene);

// `%.3f` with negative zero printed as 0.000.
std::string format_coord(double v);

} // namespace chronoplot::render
