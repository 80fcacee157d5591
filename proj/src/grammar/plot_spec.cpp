#include <chronoplot/grammar/plot_spec.hpp>

#include <chronoplot/error.hpp>

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace chronoplot::grammar {

namespace {

using json = nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<std::string_view> allowed)
{
    if (!obj.is_object()) {
        throw SpecError(where + " must be an object");
    }
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw SpecError(where + ": unknown field '" + key + "'");
        }
    }
}

std::string get_string(const json& obj, const std::string& where, const char* field)
{
    const json& v = obj.at(field);
    if (!v.is_string()) {
        throw SpecError(where + "." + field + " must be a string");
    }
    return v.get<std::string>();
}

std::optional<std::string> opt_string(const json& obj, const std::string& where, const char* field)
{
    if (!obj.contains(field)) {
        return std::nullopt;
    }
    return get_string(obj, where, field);
}

std::vector<std::string> string_list(const json& v, const std::string& where)
{
    if (!v.is_array()) {
        throw SpecError(where + " must be an array of strings");
    }
    std::vector<std::string> out;
    for (const auto& item : v) {
        if (!item.is_string()) {
            throw SpecError(where + " must be an array of strings");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

Unit unit_field(const json& obj, const std::string& where, const char* field)
{
    const std::string text = get_string(obj, where, field);
    try {
        return parse_unit(text);
    } catch (const ArgumentError&) {
        throw SpecError(where + "." + field + ": unknown granularity '" + text + "'");
    }
}

std::vector<TimeLiteral> literal_list(const json& v, const std::string& where)
{
    if (!v.is_array()) {
        throw SpecError(where + " must be an array");
    }
    std::vector<TimeLiteral> out;
    for (const auto& item : v) {
        if (item.is_number()) {
            const double d = item.get<double>();
            if (!std::isfinite(d)) {
                throw SpecError(where + ": non-finite landmark");
            }
            out.push_back(TimeLiteral{d, item.dump()});
        } else if (item.is_string()) {
            const auto text = item.get<std::string>();
            const auto parsed = parse_iso8601(text);
            if (!parsed) {
                throw SpecError(where + ": cannot parse landmark '" + text + "'");
            }
            out.push_back(TimeLiteral{*parsed, text});
        } else {
            throw SpecError(where + ": landmarks must be numbers or ISO-8601 strings");
        }
    }
    return out;
}

template <typename Enum>
Enum enum_field(const json& obj, const std::string& where, const char* field,
                std::initializer_list<std::pair<std::string_view, Enum>> names)
{
    const std::string text = get_string(obj, where, field);
    for (const auto& [name, value] : names) {
        if (text == name) {
            return value;
        }
    }
    throw SpecError(where + "." + field + ": unknown value '" + text + "'");
}

DataRef parse_data(const json& v, const std::string& where)
{
    DataRef ref;
    if (v.is_string()) {
        ref.source = v.get<std::string>();
        return ref;
    }
    reject_unknown(v, where, {"source", "index", "granularity", "tz", "keys", "measures"});
    ref.source = opt_string(v, where, "source").value_or("");
    ref.index = opt_string(v, where, "index");
    if (v.contains("granularity")) {
        ref.granularity = unit_field(v, where, "granularity");
    }
    ref.tz = opt_string(v, where, "tz");
    if (v.contains("keys")) {
        ref.keys = string_list(v.at("keys"), where + ".keys");
    }
    if (v.contains("measures")) {
        ref.measures = string_list(v.at("measures"), where + ".measures");
    }
    return ref;
}

LayerSpec parse_layer(const json& v, const std::string& where)
{
    reject_unknown(v, where, {"data", "geom", "mapping", "position"});
    LayerSpec layer;
    if (v.contains("data")) {
        layer.data = parse_data(v.at("data"), where + ".data");
    }
    if (v.contains("geom")) {
        layer.geom = enum_field<Geom>(v, where, "geom",
                                      {{"time_line", Geom::time_line}, {"point", Geom::point},
                                       {"step", Geom::step}, {"area", Geom::area}, {"rect", Geom::rect}});
    }
    if (!v.contains("mapping")) {
        throw SpecError(where + ": missing mapping");
    }
    const json& m = v.at("mapping");
    const std::string mw = where + ".mapping";
    reject_unknown(m, mw, {"x", "y", "xtimeoffset", "ytimeoffset", "color", "group"});
    if (!m.contains("x") || !m.contains("y")) {
        throw SpecError(mw + ": both x and y must be mapped");
    }
    layer.mapping.x = get_string(m, mw, "x");
    layer.mapping.y = get_string(m, mw, "y");
    layer.mapping.xtimeoffset = opt_string(m, mw, "xtimeoffset");
    layer.mapping.ytimeoffset = opt_string(m, mw, "ytimeoffset");
    layer.mapping.color = opt_string(m, mw, "color");
    layer.mapping.group = opt_string(m, mw, "group");

    if (v.contains("position")) {
        const json& p = v.at("position");
        const std::string pw = where + ".position";
        reject_unknown(p, pw, {"time", "reference_tz"});
        PositionTimeConfig pos;
        if (!p.contains("time")) {
            throw SpecError(pw + ": missing 'time' (civil or absolute)");
        }
        pos.mode = enum_field<PositionMode>(p, pw, "time",
                                            {{"civil", PositionMode::civil}, {"absolute", PositionMode::absolute}});
        pos.reference_tz = opt_string(p, pw, "reference_tz");
        layer.position = pos;
    }
    return layer;
}

ScaleTimeConfig parse_scale(const json& v, const std::string& where)
{
    reject_unknown(v, where, {"align_mixed", "warps", "time_warps", "breaks"});
    ScaleTimeConfig cfg;
    if (v.contains("align_mixed")) {
        const json& a = v.at("align_mixed");
        if (!a.is_number()) {
            throw SpecError(where + ".align_mixed must be a number");
        }
        cfg.align_mixed = a.get<double>();
        if (!(cfg.align_mixed >= 0.0 && cfg.align_mixed <= 1.0)) {
            throw SpecError(where + ".align_mixed must lie in [0, 1]");
        }
    }
    if (v.contains("warps")) {
        cfg.warps = literal_list(v.at("warps"), where + ".warps");
        if (cfg.warps->size() < 2) {
            throw SpecError(where + ".warps needs at least two landmarks");
        }
    }
    if (v.contains("time_warps")) {
        cfg.time_warps = unit_field(v, where, "time_warps");
    }
    if (cfg.warps && cfg.time_warps) {
        throw SpecError(where + ": warps and time_warps are mutually exclusive");
    }
    if (v.contains("breaks")) {
        const json& b = v.at("breaks");
        if (!b.is_number_integer() || b.get<int>() < 1) {
            throw SpecError(where + ".breaks must be a positive integer");
        }
        cfg.breaks = b.get<int>();
    }
    return cfg;
}

CoordConfig parse_coord(const json& v, const std::string& where)
{
    reject_unknown(v, where, {"type", "base", "loops", "time_loops", "direction", "wrap", "inner_radius"});
    CoordConfig cfg;
    if (v.contains("type")) {
        cfg.type = enum_field<CoordType>(v, where, "type",
                                         {{"cartesian", CoordType::cartesian}, {"loop", CoordType::loop},
                                          {"calendar", CoordType::calendar}});
    }
    if (v.contains("base")) {
        cfg.base = enum_field<CoordBase>(v, where, "base",
                                         {{"cartesian", CoordBase::cartesian}, {"polar", CoordBase::polar}});
    }
    if (v.contains("loops")) {
        cfg.loops = literal_list(v.at("loops"), where + ".loops");
        if (cfg.loops->size() < 2) {
            throw SpecError(where + ".loops needs at least two landmarks");
        }
    }
    if (v.contains("time_loops")) {
        cfg.time_loops = unit_field(v, where, "time_loops");
    }
    if (v.contains("direction")) {
        cfg.direction = enum_field<Direction>(v, where, "direction",
                                              {{"rows", Direction::rows}, {"cols", Direction::cols}});
    }
    if (v.contains("wrap")) {
        const json& w = v.at("wrap");
        if (!w.is_number_integer() || w.get<long long>() < 1) {
            throw SpecError(where + ".wrap must be a positive integer");
        }
        cfg.wrap = w.get<int>();
    }
    if (v.contains("inner_radius")) {
        const json& r = v.at("inner_radius");
        if (!r.is_number() || !(r.get<double>() >= 0.0 && r.get<double>() < 1.0)) {
            throw SpecError(where + ".inner_radius must lie in [0, 1)");
        }
        cfg.inner_radius = r.get<double>();
    }

    const bool looped = cfg.type != CoordType::cartesian;
    if (looped && static_cast<int>(cfg.loops.has_value()) + static_cast<int>(cfg.time_loops.has_value()) != 1) {
        throw SpecError(where + ": loop and calendar coordinates need exactly one of loops or time_loops");
    }
    if (!looped && (cfg.loops || cfg.time_loops || cfg.wrap)) {
        throw SpecError(where + ": loops, time_loops and wrap only apply to loop or calendar coordinates");
    }
    if (cfg.base == CoordBase::polar && cfg.type != CoordType::loop) {
        throw SpecError(where + ": the polar base is only available for loop coordinates");
    }
    if (cfg.wrap && cfg.type != CoordType::calendar) {
        throw SpecError(where + ": wrap only applies to calendar coordinates");
    }
    return cfg;
}

} // namespace

PlotSpec plot_spec_from_json(const json& doc)
{
    reject_unknown(doc, "spec", {"title", "labels", "width", "height", "layers", "scale_x", "scale_y", "coord"});
    PlotSpec spec;
    spec.title = opt_string(doc, "spec", "title").value_or("");
    if (doc.contains("labels")) {
        const json& l = doc.at("labels");
        reject_unknown(l, "spec.labels", {"x", "y"});
        spec.x_label = opt_string(l, "spec.labels", "x").value_or("");
        spec.y_label = opt_string(l, "spec.labels", "y").value_or("");
    }
    for (const char* dim : {"width", "height"}) {
        if (doc.contains(dim)) {
            const json& d = doc.at(dim);
            if (!d.is_number_integer() || d.get<long long>() < 100 || d.get<long long>() > 10000) {
                throw SpecError(std::string("spec.") + dim + " must be an integer in [100, 10000]");
            }
            (std::string_view(dim) == "width" ? spec.width : spec.height) = d.get<int>();
        }
    }
    if (!doc.contains("layers") || !doc.at("layers").is_array() || doc.at("layers").empty()) {
        throw SpecError("spec.layers must be a non-empty array");
    }
    const json& layers = doc.at("layers");
    for (std::size_t i = 0; i < layers.size(); ++i) {
        spec.layers.push_back(parse_layer(layers[i], "spec.layers[" + std::to_string(i) + "]"));
    }
    if (doc.contains("scale_x")) {
        spec.scale_x = parse_scale(doc.at("scale_x"), "spec.scale_x");
    }
    if (doc.contains("scale_y")) {
        spec.scale_y = parse_scale(doc.at("scale_y"), "spec.scale_y");
    }
    if (doc.contains("coord")) {
        spec.coord = parse_coord(doc.at("coord"), "spec.coord");
    }
    return spec;
}

PlotSpec parse_plot_spec(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("spec is not valid JSON: ") + e.what());
    }
    return plot_spec_from_json(doc);
}

std::string_view geom_name(Geom g)
{
    switch (g) {
    case Geom::time_line: return "time_line";
    case Geom::point: return "point";
    case Geom::step: return "step";
    case Geom::area: return "area";
    case Geom::rect: return "rect";
    }
    return "";
}

} // namespace chronoplot::grammar
