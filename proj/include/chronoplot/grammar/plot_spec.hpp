#pragma once

#include <chronoplot/civil.hpp>
#include <chronoplot/granularity.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace chronoplot::grammar {

enum class Geom { time_line, point, step, area, rect };
enum class PositionMode { civil, absolute };
enum class CoordType { cartesian, loop, calendar };
enum class CoordBase { cartesian, polar };
enum class Direction { rows, cols };

// A landmark written in a spec: a number is taken as axis-frame seconds, a
// string as an ISO-8601 reading (civil unless it carries an offset).
struct TimeLiteral
{
    std::variant<double, ParsedTimestamp> value;
    std::string text;
};

// Where a layer's table comes from. Unset fields fall back to the defaults
// supplied by the caller (the CLI schema options).
struct DataRef
{
    std::string source;
    std::optional<std::string> index;
    std::optional<Unit> granularity;
    std::optional<std::string> tz;
    std::optional<std::vector<std::string>> keys;
    std::optional<std::vector<std::string>> measures;
};

struct AestheticMapping
{
    std::string x;
    std::string y;
    std::optional<std::string> xtimeoffset;
    std::optional<std::string> ytimeoffset;
    std::optional<std::string> color;
    std::optional<std::string> group;
};

struct PositionTimeConfig
{
    PositionMode mode = PositionMode::absolute;
    std::optional<std::string> reference_tz; // civil default UTC; absolute default the layer zone
};

struct LayerSpec
{
    DataRef data;
    Geom geom = Geom::time_line;
    AestheticMapping mapping;
    std::optional<PositionTimeConfig> position;
};

struct ScaleTimeConfig
{
    double align_mixed = 0.5;
    std::optional<std::vector<TimeLiteral>> warps;
    std::optional<Unit> time_warps;
    std::optional<int> breaks;
};

struct CoordConfig
{
    CoordType type = CoordType::cartesian;
    CoordBase base = CoordBase::cartesian;
    std::optional<std::vector<TimeLiteral>> loops;
    std::optional<Unit> time_loops;
    Direction direction = Direction::rows;
    std::optional<int> wrap;
    double inner_radius = 0.2;
};

struct PlotSpec
{
    std::vector<LayerSpec> layers;
    ScaleTimeConfig scale_x;
    std::optional<ScaleTimeConfig> scale_y;
    CoordConfig coord;
    std::string title;
    std::string x_label;
    std::string y_label;
    int width = 800;
    int height = 500;
};

// Parses and checks the document. Unknown fields, wrong types, mutually
// exclusive options and out-of-range values raise SpecError.
PlotSpec plot_spec_from_json(const nlohmann::json& doc);
PlotSpec parse_plot_spec(std::string_view text);

std::string_view geom_name(Geom g);

} // namespace chronoplot::grammar
