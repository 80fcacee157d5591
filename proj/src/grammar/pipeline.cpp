#include <chronoplot/grammar/pipeline.hpp>

#include <chronoplot/error.hpp>
#include <chronoplot/report.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace chronoplot::grammar {

namespace {

constexpr int palette_size = 8;

struct LayerInput
{
    const LayerSpec* spec;
    LayerData data;
    std::size_t y_col;
    std::optional<std::size_t> offset_col;
    std::optional<std::size_t> color_col;
    std::optional<std::size_t> group_col;
};

std::size_t measure_or_throw(const TimeSeries& ts, const std::string& name, const std::string& where)
{
    const auto col = ts.measure_column(name);
    if (!col) {
        throw SpecError(where + ": no measure column '" + name + "'");
    }
    return *col;
}

std::size_t key_or_throw(const TimeSeries& ts, const std::string& name, const std::string& where)
{
    const auto col = ts.key_column(name);
    if (!col) {
        throw SpecError(where + ": no key column '" + name + "'");
    }
    return *col;
}

Frame resolve_frame(const std::vector<LayerInput>& layers, const TimeZoneRegistry& zones)
{
    std::optional<PositionMode> mode;
    std::optional<std::string> reference;
    for (const LayerInput& layer : layers) {
        const PositionTimeConfig pos = layer.spec->position.value_or(PositionTimeConfig{});
        if (mode && *mode != pos.mode) {
            throw ScaleError("all layers must share civil or absolute positioning");
        }
        mode = pos.mode;
        if (pos.reference_tz) {
            if (reference && *reference != *pos.reference_tz) {
                throw ScaleError("layers disagree on the reference time zone");
            }
            reference = pos.reference_tz;
        }
    }
    Frame frame;
    frame.mode = mode.value_or(PositionMode::absolute);
    if (reference) {
        frame.reference = zones.get(*reference);
    } else if (frame.mode == PositionMode::civil) {
        frame.reference = utc();
    } else {
        frame.reference = layers.front().data.series.tz();
    }
    return frame;
}

void append_segments(std::vector<Polyline>& lines, const std::vector<Segment>& segments, int color, int layer,
                     bool filled)
{
    Polyline* open = nullptr;
    for (const Segment& s : segments) {
        const bool dashed = s.style == LineStyle::dashed;
        const Vec2 a{s.x0, s.y0};
        const Vec2 b{s.x1, s.y1};
        if (open && !dashed && !open->dashed && open->cycle == s.cycle && open->group == s.group
            && open->points.back() == a) {
            open->points.push_back(b);
            continue;
        }
        lines.push_back(Polyline{{a, b}, dashed, filled && !dashed, color, layer, s.group, s.cycle});
        open = &lines.back();
    }
}

} // namespace

ResolvedPlot build_plot(const PlotSpec& spec, const DataResolver& resolve, const TimeZoneRegistry& zones)
{
    ResolvedPlot plot;
    plot.title = spec.title;
    plot.x_label = spec.x_label;
    plot.y_label = spec.y_label;
    plot.width = spec.width;
    plot.height = spec.height;
    plot.coord = spec.coord;
    if (spec.scale_y) {
        throw SpecError("scale_y needs a time-valued y, which is not supported");
    }

    std::vector<LayerInput> layers;
    for (std::size_t i = 0; i < spec.layers.size(); ++i) {
        const LayerSpec& ls = spec.layers[i];
        const std::string where = "layer " + std::to_string(i + 1);
        LayerInput in{&ls, resolve(ls.data), 0, {}, {}, {}};
        const TimeSeries& ts = in.data.series;
        if (ls.mapping.x != ts.index_name()) {
            throw SpecError(where + ": x is mapped to '" + ls.mapping.x + "' but the time index is '"
                            + ts.index_name() + "'");
        }
        if (ls.mapping.ytimeoffset) {
            throw SpecError(where + ": ytimeoffset needs a time-valued y, which is not supported");
        }
        in.y_col = measure_or_throw(ts, ls.mapping.y, where);
        if (ls.mapping.xtimeoffset) {
            in.offset_col = measure_or_throw(ts, *ls.mapping.xtimeoffset, where);
        }
        if (ls.mapping.color) {
            in.color_col = key_or_throw(ts, *ls.mapping.color, where);
        }
        if (ls.mapping.group) {
            in.group_col = key_or_throw(ts, *ls.mapping.group, where);
        }
        layers.push_back(std::move(in));
    }

    // Uniqueness of every table feeds the diagnostics; contiguity is left to
    // the validator since sparse annotation layers are legitimate.
    for (const LayerInput& layer : layers) {
        const TimeSeries& ts = layer.data.series;
        for (const std::string& w : layer.data.warnings) {
            plot.diagnostics.push_back({Severity::validity, w});
        }
        std::istringstream lines(report_to_text(check_unique(ts), ts));
        for (std::string line; std::getline(lines, line);) {
            if (!line.empty()) {
                plot.diagnostics.push_back({Severity::validity, line});
            }
        }
    }

    const Frame frame = resolve_frame(layers, zones);
    std::vector<ScaleLayer> scale_layers;
    for (const LayerInput& layer : layers) {
        const TimeSeries& ts = layer.data.series;
        ScaleLayer sl{ts.unit(), {}, {}, layer.spec->geom == Geom::rect};
        for (std::size_t r = 0; r < ts.size(); ++r) {
            sl.points.push_back(ts.time_point(r));
            if (layer.offset_col) {
                sl.offsets.push_back(ts.rows()[r].measures[*layer.offset_col].value_or(0.0));
            }
        }
        scale_layers.push_back(std::move(sl));
    }
    plot.scale = train_scale(scale_layers, spec.scale_x, frame);
    const ScaleState& st = plot.scale;
    const auto to_scale = [&st](double v) { return st.to_scale(v); };

    const bool looped = spec.coord.type != CoordType::cartesian;
    if (looped) {
        plot.landmarks = loop_landmarks(spec.coord, st);
        plot.cycles = cycle_lengths(plot.landmarks);
        plot.x_axis = loop_axis(spec.coord, st, plot.landmarks);
    } else {
        plot.x_axis = time_axis(st);
    }

    // Colors follow the color aesthetic's values, otherwise the layer.
    std::map<std::string, int> color_of;
    const auto color_for = [&](const LayerInput& layer, std::size_t li, const Row& row) {
        if (!layer.color_col) {
            return static_cast<int>(li % palette_size);
        }
        const std::string& value = row.keys[*layer.color_col];
        const auto [it, added] = color_of.emplace(value, static_cast<int>(color_of.size() % palette_size));
        if (added) {
            plot.legend.push_back({value, it->second});
        }
        return it->second;
    };

    std::vector<Polyline> all_lines;
    std::vector<RectMark> all_rects;
    std::vector<PointMark> all_points;
    std::size_t dropped = 0;
    double y_lo = std::numeric_limits<double>::infinity();
    double y_hi = -y_lo;
    bool zero_based = false;
    int next_group = 0;

    for (std::size_t li = 0; li < layers.size(); ++li) {
        const LayerInput& layer = layers[li];
        const TimeSeries& ts = layer.data.series;
        const Geom geom = layer.spec->geom;
        zero_based = zero_based || geom == Geom::area || geom == Geom::rect;

        // Groups in order of first appearance.
        std::map<KeyTuple, int> group_of;
        std::vector<int> group_color;
        std::vector<std::vector<TimedValue>> grouped;
        for (std::size_t r = 0; r < ts.size(); ++r) {
            const Row& row = ts.rows()[r];
            const KeyTuple gkey = layer.group_col ? KeyTuple{row.keys[*layer.group_col]} : row.keys;
            auto [it, added] = group_of.emplace(gkey, static_cast<int>(grouped.size()));
            if (added) {
                grouped.emplace_back();
                group_color.push_back(color_for(layer, li, row));
            }
            const auto& y = row.measures[layer.y_col];
            TimedValue v;
            v.tp = ts.time_point(r);
            v.y = y ? *y : std::numeric_limits<double>::quiet_NaN();
            v.extra_offset = layer.offset_col ? row.measures[*layer.offset_col].value_or(0.0) : 0.0;
            v.group = next_group + it->second;
            grouped[static_cast<std::size_t>(it->second)].push_back(v);
            if (y) {
                y_lo = std::min(y_lo, *y);
                y_hi = std::max(y_hi, *y);
            }
        }

        for (std::size_t g = 0; g < grouped.size(); ++g) {
            const int color = group_color[g];
            const int layer_id = static_cast<int>(li);
            std::vector<MappedPoint> mapped = position_time(grouped[g], st);

            if (geom == Geom::point) {
                for (const MappedPoint& p : mapped) {
                    if (std::isnan(p.y)) {
                        continue;
                    }
                    if (!looped) {
                        all_points.push_back({{p.x, p.y}, color, layer_id, 0});
                    } else if (const auto lp = loop_transform(p.x, plot.landmarks)) {
                        all_points.push_back({{lp->local, p.y}, color, layer_id, lp->cycle});
                    } else {
                        ++dropped;
                    }
                }
                continue;
            }
            if (geom == Geom::rect) {
                for (std::size_t i = 0; i < grouped[g].size(); ++i) {
                    const TimedValue& v = grouped[g][i];
                    if (std::isnan(v.y)) {
                        continue;
                    }
                    const double x0 = st.to_scale(frame_position(v.tp, 0.0, st.frame) + v.extra_offset);
                    const double x1 = st.to_scale(frame_position(v.tp, 1.0, st.frame) + v.extra_offset);
                    if (!looped) {
                        all_rects.push_back({x0, x1, 0.0, v.y, color, layer_id, 0});
                    } else if (const auto lp = loop_transform(x0, plot.landmarks)) {
                        all_rects.push_back({lp->local, lp->local + (x1 - x0), 0.0, v.y, color, layer_id, lp->cycle});
                    } else {
                        ++dropped;
                    }
                }
                continue;
            }

            std::vector<Segment> segments;
            if (geom == Geom::step) {
                segments = build_steps(mapped, mapped.empty() ? 0 : mapped.front().group);
            } else {
                if (geom == Geom::area) {
                    for (MappedPoint& p : mapped) {
                        p.x_offset = 0.0;
                    }
                }
                const int group = mapped.empty() ? 0 : mapped.front().group;
                TimeLine line = build_time_line(mapped, group, to_scale);
                segments = std::move(line.segments);
                if (layer.group_col) {
                    for (std::string& w : line.warnings) {
                        plot.diagnostics.push_back({Severity::validity, "layer " + std::to_string(li + 1) + " "
                                                                            + w});
                    }
                }
                // A single observation still shows up as a point.
                if (segments.empty() && mapped.size() == 1 && !std::isnan(mapped.front().y)) {
                    const MappedPoint& p = mapped.front();
                    if (!looped) {
                        all_points.push_back({{p.x, p.y}, color, layer_id, 0});
                    } else if (const auto lp = loop_transform(p.x, plot.landmarks)) {
                        all_points.push_back({{lp->local, p.y}, color, layer_id, lp->cycle});
                    }
                }
            }
            if (looped) {
                segments = loop_segments(segments, plot.landmarks, &dropped);
            }
            append_segments(all_lines, segments, color, layer_id, geom == Geom::area);
        }
        next_group += static_cast<int>(grouped.size());

        if (!layer.color_col && layers.size() > 1) {
            plot.legend.push_back({layer.spec->data.source.empty() ? layer.spec->mapping.y
                                                                   : layer.spec->data.source + ":"
                                                                         + layer.spec->mapping.y,
                                   static_cast<int>(li % palette_size)});
        }
    }
    if (dropped > 0) {
        plot.diagnostics.push_back(
            {Severity::info, std::to_string(dropped) + " mark piece(s) outside the loop landmarks were dropped"});
    }

    if (!(y_hi >= y_lo)) {
        y_lo = y_hi = 0.0;
    }
    plot.y_axis = value_axis(y_lo, y_hi, zero_based);

    // Panels.
    if (spec.coord.type == CoordType::calendar) {
        const int wrap = spec.coord.wrap.value_or(1);
        const int n = static_cast<int>(plot.cycles.size());
        plot.rows = 0;
        plot.cols = 0;
        for (int k = 0; k < n; ++k) {
            const Cell cell = calendar_cell(k, wrap, spec.coord.direction);
            plot.rows = std::max(plot.rows, cell.row + 1);
            plot.cols = std::max(plot.cols, cell.col + 1);
            Panel panel;
            panel.row = cell.row;
            panel.col = cell.col;
            panel.cycle = k;
            plot.panels.push_back(std::move(panel));
        }
        for (Polyline& line : all_lines) {
            plot.panels[static_cast<std::size_t>(line.cycle)].lines.push_back(std::move(line));
        }
        for (const RectMark& r : all_rects) {
            plot.panels[static_cast<std::size_t>(r.cycle)].rects.push_back(r);
        }
        for (const PointMark& p : all_points) {
            plot.panels[static_cast<std::size_t>(p.cycle)].points.push_back(p);
        }
    } else {
        Panel panel;
        panel.lines = std::move(all_lines);
        panel.rects = std::move(all_rects);
        panel.points = std::move(all_points);
        plot.panels.push_back(std::move(panel));
    }
    return plot;
}

} // namespace chronoplot::grammar
