#pragma once

#include <chronoplot/grammar/position.hpp>

#include <functional>
#include <string>
#include <vector>

namespace chronoplot::grammar {

enum class LineStyle { solid, dashed };

struct Segment
{
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;
    LineStyle style = LineStyle::solid;
    int cycle = 0;
    int group = 0;
};

struct TimeLine
{
    std::vector<Segment> segments;
    std::vector<std::string> warnings;
};

// Joins the points of one group in absolute-time order. A change of x_offset
// between neighbours becomes a dashed segment at the earlier point's y that
// spans the offset jump, followed by a solid segment to the later point.
// Missing y values split the line. `to_scale` maps frame values to scale
// units.
TimeLine build_time_line(std::vector<MappedPoint> points, int group,
                         const std::function<double(double)>& to_scale);

// Horizontal-then-vertical steps in absolute-time order; offsets are ignored.
std::vector<Segment> build_steps(std::vector<MappedPoint> points, int group);

} // namespace chronoplot::grammar
