#pragma once

#include <chronoplot/grammar/breaks.hpp>
#include <chronoplot/grammar/coord.hpp>
#include <chronoplot/grammar/plot_spec.hpp>
#include <chronoplot/time_series.hpp>

#include <functional>
#include <string>
#include <vector>

namespace chronoplot::grammar {

struct Vec2
{
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

// Data-space marks. In loop and calendar coordinates x is cycle-local.
struct Polyline
{
    std::vector<Vec2> points;
    bool dashed = false;
    bool filled = false; // area: closed down to the baseline
    int color = 0;
    int layer = 0;
    int group = 0;
    int cycle = 0;
};

struct PointMark
{
    Vec2 at;
    int color = 0;
    int layer = 0;
    int cycle = 0;
};

struct RectMark
{
    double x0 = 0.0;
    double x1 = 0.0;
    double y0 = 0.0;
    double y1 = 0.0;
    int color = 0;
    int layer = 0;
    int cycle = 0;
};

struct Panel
{
    int row = 0;
    int col = 0;
    int cycle = -1; // calendar cells only
    std::vector<Polyline> lines;
    std::vector<RectMark> rects;
    std::vector<PointMark> points;
};

enum class Severity {
    validity, // breaks a validity condition; fatal under strict mode
    info,
};

struct Diagnostic
{
    Severity severity = Severity::validity;
    std::string message;
};

struct LegendEntry
{
    std::string label;
    int color = 0;
};

struct ResolvedPlot
{
    std::string title;
    std::string x_label;
    std::string y_label;
    int width = 800;
    int height = 500;
    CoordConfig coord;

    ScaleState scale;
    Axis x_axis;
    Axis y_axis;
    std::vector<double> landmarks; // loop landmarks, scale units
    std::vector<double> cycles;    // loop cycle lengths

    int rows = 1;
    int cols = 1;
    std::vector<Panel> panels;
    std::vector<LegendEntry> legend;
    std::vector<Diagnostic> diagnostics;
};

struct LayerData
{
    TimeSeries series;
    std::vector<std::string> warnings;
};

using DataResolver = std::function<LayerData(const DataRef&)>;

// Runs the whole grammar: resolves data, positions, trains the time scale,
// builds marks and applies the coordinate system.
//
// Throws SpecError for mappings naming missing columns or conflicting
// positioning, ScaleError for scales that cannot be trained, ConfigError for
// bad landmarks or unknown zones. Data errors from the resolver propagate.
ResolvedPlot build_plot(const PlotSpec& spec, const DataResolver& resolve, const TimeZoneRegistry& zones);

} // namespace chronoplot::grammar
