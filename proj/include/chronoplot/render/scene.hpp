#pragma once

#include <chronoplot/grammar/pipeline.hpp>

#include <string>
#include <variant>
#include <vector>

namespace chronoplot::render {

struct Point
{
    double x = 0.0;
    double y = 0.0;
};

struct Rect
{
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;
};

enum class Anchor { start, middle, end };

struct RectShape
{
    Rect r;
    std::string fill = "none";
    std::string stroke = "none";
    double opacity = 1.0;
};

struct PolylineShape
{
    std::vector<Point> points;
    std::string stroke = "#000000";
    double width = 1.5;
    bool dashed = false;
};

struct CircleShape
{
    Point c;
    double r = 2.5;
    std::string fill = "#000000";
    std::string stroke = "none";
};

struct PathShape
{
    std::vector<Point> points;
    bool closed = true;
    std::string fill = "none";
    std::string stroke = "none";
    double opacity = 1.0;
};

struct TextShape
{
    Point at;
    std::string text;
    double size = 10.0;
    Anchor anchor = Anchor::start;
    double rotate = 0.0; // degrees about `at`
};

using Element = std::variant<RectShape, PolylineShape, CircleShape, PathShape, TextShape>;

struct ScenePanel
{
    Rect viewport;
    int row = 0;
    int col = 0;
    std::vector<Element> axes;  // frame, grid, ticks and tick labels
    std::vector<Element> marks; // data marks in layer order, then row order
};

struct Scene
{
    int width = 800;
    int height = 500;
    std::vector<Element> decorations; // title, axis titles, legend
    std::vector<ScenePanel> panels;
};

inline constexpr double padding = 10.0;
inline constexpr double cell_gap = 6.0;
inline constexpr double char_advance = 0.6; // of the font size

// Fixed 8-colour categorical palette.
const std::string& palette(int index);

// Rough text width used for layout.
double text_width(std::string_view text, double size);

// Lays out panels, axes and marks in device space. Throws RenderError for a
// degenerate domain.
Scene build_scene(const grammar::ResolvedPlot& plot);

} // namespace chronoplot::render
