#include <chronoplot/render/scene.hpp>

#include <chronoplot/render/project.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

namespace chronoplot::render {

using grammar::ResolvedPlot;

const std::string& palette(int index)
{
    static const std::array<std::string, 8> colors{"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                                   "#66a61e", "#e6ab02", "#a6761d", "#666666"};
    return colors[static_cast<std::size_t>(((index % 8) + 8) % 8)];
}

double text_width(std::string_view text, double size)
{
    const auto glyphs = std::count_if(text.begin(), text.end(), [](char c) { return (c & 0xC0) != 0x80; });
    return static_cast<double>(glyphs) * char_advance * size;
}

namespace {

constexpr double tick_font = 10.0;
const std::string grid_color = "#e5e5e5";
const std::string frame_color = "#999999";
const std::string text_color = "#333333";

PolylineShape rule(Point a, Point b, const std::string& color)
{
    return PolylineShape{{a, b}, color, 1.0, false};
}

struct Ranges
{
    double x_lo;
    double x_hi;
    double y_lo;
    double y_hi;
};

template <typename Project>
void emit_marks(ScenePanel& out, const grammar::Panel& panel, const Project& project, double baseline)
{
    int max_layer = -1;
    for (const auto& l : panel.lines) max_layer = std::max(max_layer, l.layer);
    for (const auto& r : panel.rects) max_layer = std::max(max_layer, r.layer);
    for (const auto& p : panel.points) max_layer = std::max(max_layer, p.layer);

    for (int layer = 0; layer <= max_layer; ++layer) {
        for (const auto& r : panel.rects) {
            if (r.layer == layer) {
                project.rect(out, r);
            }
        }
        for (const auto& line : panel.lines) {
            if (line.layer != layer) {
                continue;
            }
            if (line.filled) {
                auto outline = line.points;
                outline.push_back({line.points.back().x, baseline});
                outline.push_back({line.points.front().x, baseline});
                out.marks.push_back(PathShape{project.path(outline), true, palette(line.color), "none", 0.3});
            }
            out.marks.push_back(PolylineShape{project.path(line.points), palette(line.color), 1.5, line.dashed});
        }
        for (const auto& p : panel.points) {
            if (p.layer == layer) {
                out.marks.push_back(CircleShape{project.point(p.at), 2.5, palette(p.color), "none"});
            }
        }
    }
}

struct CartesianMarks
{
    CartesianProjection proj;

    Point point(grammar::Vec2 v) const { return proj(v.x, v.y); }

    std::vector<Point> path(const std::vector<grammar::Vec2>& pts) const
    {
        std::vector<Point> out;
        for (const auto& v : pts) out.push_back(proj(v.x, v.y));
        return out;
    }

    void rect(ScenePanel& out, const grammar::RectMark& r) const
    {
        const Point a = proj(r.x0, r.y0);
        const Point b = proj(r.x1, r.y1);
        out.marks.push_back(RectShape{{std::min(a.x, b.x), std::min(a.y, b.y), std::abs(b.x - a.x),
                                       std::abs(b.y - a.y)},
                                      palette(r.color), "none", 0.8});
    }
};

struct PolarMarks
{
    PolarProjection proj;

    Point point(grammar::Vec2 v) const { return proj(v.x, v.y); }

    std::vector<Point> path(const std::vector<grammar::Vec2>& pts) const { return proj.arc(pts); }

    void rect(ScenePanel& out, const grammar::RectMark& r) const
    {
        const std::vector<grammar::Vec2> outline{{r.x0, r.y1}, {r.x1, r.y1}, {r.x1, r.y0}, {r.x0, r.y0},
                                                 {r.x0, r.y1}};
        out.marks.push_back(PathShape{proj.arc(outline), true, palette(r.color), "none", 0.8});
    }
};

std::string cycle_caption(const ResolvedPlot& plot, int cycle)
{
    const double mark = plot.landmarks[static_cast<std::size_t>(cycle)];
    const double frame_value = plot.scale.warp ? plot.scale.warp->inverse(mark) : mark;
    const CivilDateTime c = plot.scale.frame.to_civil(std::round(frame_value));
    return format_date(c.date);
}

} // namespace

Scene build_scene(const ResolvedPlot& plot)
{
    Scene scene;
    scene.width = plot.width;
    scene.height = plot.height;
    double top = padding;
    double left = padding;
    double right = plot.width - padding;
    double bottom = plot.height - padding;

    if (!plot.title.empty()) {
        scene.decorations.push_back(TextShape{{plot.width / 2.0, top + 13.0}, plot.title, 14.0, Anchor::middle, 0.0});
        top += 22.0;
    }
    if (!plot.legend.empty()) {
        double widest = 0.0;
        for (const auto& e : plot.legend) widest = std::max(widest, text_width(e.label, tick_font));
        right -= widest + 24.0;
        for (std::size_t i = 0; i < plot.legend.size(); ++i) {
            const double y = top + 14.0 * static_cast<double>(i);
            scene.decorations.push_back(RectShape{{right + 8.0, y, 10.0, 10.0}, palette(plot.legend[i].color), "none", 1.0});
            scene.decorations.push_back(TextShape{{right + 22.0, y + 9.0}, plot.legend[i].label, tick_font, Anchor::start, 0.0});
        }
        right -= 6.0;
    }
    if (!plot.y_label.empty()) {
        scene.decorations.push_back(
            TextShape{{left + 10.0, (top + bottom) / 2.0}, plot.y_label, 11.0, Anchor::middle, -90.0});
        left += 16.0;
    }
    if (!plot.x_label.empty()) {
        scene.decorations.push_back(TextShape{{(left + right) / 2.0, bottom - 2.0}, plot.x_label, 11.0, Anchor::middle, 0.0});
        bottom -= 16.0;
    }

    const bool looped = plot.coord.type != grammar::CoordType::cartesian;
    const Ranges range{looped ? 0.0 : plot.x_axis.lo, plot.x_axis.hi, plot.y_axis.lo, plot.y_axis.hi};
    const double baseline = std::clamp(0.0, range.y_lo, range.y_hi);

    if (plot.coord.type == grammar::CoordType::loop && plot.coord.base == grammar::CoordBase::polar) {
        const Point centre{(left + right) / 2.0, (top + bottom) / 2.0};
        const double radius = std::min(right - left, bottom - top) / 2.0 - 22.0;
        const PolarMarks marks{PolarProjection(range.x_lo, range.x_hi, range.y_lo, range.y_hi, centre, radius,
                                               plot.coord.inner_radius)};
        const PolarProjection& proj = marks.proj;
        ScenePanel panel;
        panel.viewport = {centre.x - radius, centre.y - radius, 2.0 * radius, 2.0 * radius};
        for (std::size_t i = 0; i < plot.y_axis.ticks.size(); ++i) {
            const double t = plot.y_axis.ticks[i];
            if (t < range.y_lo || t > range.y_hi) {
                continue;
            }
            panel.axes.push_back(CircleShape{centre, proj.radius(t), "none", grid_color});
            panel.axes.push_back(TextShape{{centre.x + 3.0, centre.y - proj.radius(t) - 2.0}, plot.y_axis.labels[i],
                                           9.0, Anchor::start, 0.0});
        }
        panel.axes.push_back(CircleShape{centre, proj.radius(range.y_lo), "none", frame_color});
        panel.axes.push_back(CircleShape{centre, radius, "none", frame_color});
        for (std::size_t i = 0; i < plot.x_axis.ticks.size(); ++i) {
            const double x = plot.x_axis.ticks[i];
            panel.axes.push_back(rule(proj(x, range.y_lo), proj(x, range.y_hi), grid_color));
            const double a = proj.angle(x);
            const Point at{centre.x + (radius + 12.0) * std::sin(a), centre.y - (radius + 12.0) * std::cos(a) + 3.5};
            panel.axes.push_back(TextShape{at, plot.x_axis.labels[i], tick_font, Anchor::middle, 0.0});
        }
        emit_marks(panel, plot.panels.front(), marks, baseline);
        scene.panels.push_back(std::move(panel));
        return scene;
    }

    double label_width = 0.0;
    for (const auto& l : plot.y_axis.labels) label_width = std::max(label_width, text_width(l, tick_font));
    left += label_width + 8.0;
    bottom -= 18.0;

    const bool calendar = plot.coord.type == grammar::CoordType::calendar;
    const int rows = std::max(1, plot.rows);
    const int cols = std::max(1, plot.cols);
    const double cell_w = (right - left - (cols - 1) * cell_gap) / cols;
    const double cell_h = (bottom - top - (rows - 1) * cell_gap) / rows;

    std::map<int, int> lowest_row;
    for (const auto& p : plot.panels) {
        lowest_row[p.col] = std::max(lowest_row[p.col], p.row);
    }

    for (const grammar::Panel& src : plot.panels) {
        ScenePanel panel;
        panel.row = src.row;
        panel.col = src.col;
        panel.viewport = {left + src.col * (cell_w + cell_gap), top + src.row * (cell_h + cell_gap), cell_w, cell_h};
        const Rect& vp = panel.viewport;
        const CartesianMarks marks{CartesianProjection(range.x_lo, range.x_hi, range.y_lo, range.y_hi, vp)};
        const CartesianProjection& proj = marks.proj;

        panel.axes.push_back(RectShape{vp, "none", frame_color, 1.0});
        for (std::size_t i = 0; i < plot.y_axis.ticks.size(); ++i) {
            const double t = plot.y_axis.ticks[i];
            if (t < range.y_lo || t > range.y_hi) {
                continue;
            }
            const Point a = proj(range.x_lo, t);
            panel.axes.push_back(rule(a, proj(range.x_hi, t), grid_color));
            if (src.col == 0) {
                panel.axes.push_back(TextShape{{a.x - 4.0, a.y + 3.5}, plot.y_axis.labels[i], tick_font, Anchor::end, 0.0});
            }
        }
        for (std::size_t i = 0; i < plot.x_axis.ticks.size(); ++i) {
            const double t = plot.x_axis.ticks[i];
            if (t < range.x_lo || t > range.x_hi) {
                continue;
            }
            const Point a = proj(t, range.y_lo);
            panel.axes.push_back(rule(a, proj(t, range.y_hi), grid_color));
            if (src.row == lowest_row[src.col]) {
                panel.axes.push_back(TextShape{{a.x, a.y + 13.0}, plot.x_axis.labels[i], tick_font, Anchor::middle, 0.0});
            }
        }
        if (calendar) {
            panel.axes.push_back(TextShape{{vp.x + 3.0, vp.y + 9.0}, cycle_caption(plot, src.cycle), 8.0, Anchor::start, 0.0});
        }
        emit_marks(panel, src, marks, baseline);
        scene.panels.push_back(std::move(panel));
    }
    return scene;
}

} // namespace chronoplot::render
