#include <chronoplot/grammar/time_line.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace chronoplot::grammar {

namespace {

void sort_by_time(std::vector<MappedPoint>& points)
{
    std::stable_sort(points.begin(), points.end(),
                     [](const MappedPoint& a, const MappedPoint& b) { return a.absolute_t < b.absolute_t; });
}

} // namespace

TimeLine build_time_line(std::vector<MappedPoint> points, int group,
                         const std::function<double(double)>& to_scale)
{
    sort_by_time(points);
    TimeLine out;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].absolute_t == points[i - 1].absolute_t) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "group %d: duplicate observations at t=%.0f drawn in input order",
                          group, points[i].absolute_t.seconds);
            out.warnings.emplace_back(buf);
        }
    }
    for (std::size_t i = 1; i < points.size(); ++i) {
        const MappedPoint& p = points[i - 1];
        const MappedPoint& q = points[i];
        if (std::isnan(p.y) || std::isnan(q.y)) {
            continue;
        }
        double x = p.x;
        if (q.x_offset != p.x_offset) {
            const double jumped = to_scale(p.frame_x + (q.x_offset - p.x_offset));
            out.segments.push_back({p.x, p.y, jumped, p.y, LineStyle::dashed, 0, group});
            x = jumped;
        }
        out.segments.push_back({x, p.y, q.x, q.y, LineStyle::solid, 0, group});
    }
    return out;
}

std::vector<Segment> build_steps(std::vector<MappedPoint> points, int group)
{
    sort_by_time(points);
    std::vector<Segment> out;
    for (std::size_t i = 1; i < points.size(); ++i) {
        const MappedPoint& p = points[i - 1];
        const MappedPoint& q = points[i];
        if (std::isnan(p.y) || std::isnan(q.y)) {
            continue;
        }
        out.push_back({p.x, p.y, q.x, p.y, LineStyle::solid, 0, group});
        out.push_back({q.x, p.y, q.x, q.y, LineStyle::solid, 0, group});
    }
    return out;
}

} // namespace chronoplot::grammar
