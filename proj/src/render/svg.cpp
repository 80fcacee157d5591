#include <chronoplot/render/svg.hpp>

#include <cstdio>
#include <string>

namespace chronoplot::render {

std::string format_coord(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    std::string s = buf;
    if (s == "-0.000") {
        s = "0.000";
    }
    return s;
}

namespace {

std::string escape(std::string_view text)
{
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string points_attr(const std::vector<Point>& pts)
{
    std::string out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) {
            out += ' ';
        }
        out += format_coord(pts[i].x) + ',' + format_coord(pts[i].y);
    }
    return out;
}

std::string opacity_attr(double opacity)
{
    return opacity < 1.0 ? " fill-opacity=\"" + format_coord(opacity) + "\"" : "";
}

struct Writer
{
    std::string& out;
    std::string indent;

    void operator()(const RectShape& r) const
    {
        out += indent + "<rect x=\"" + format_coord(r.r.x) + "\" y=\"" + format_coord(r.r.y) + "\" width=\""
            + format_coord(r.r.w) + "\" height=\"" + format_coord(r.r.h) + "\" fill=\"" + r.fill + "\""
            + opacity_attr(r.opacity) + " stroke=\"" + r.stroke + "\"/>\n";
    }

    void operator()(const PolylineShape& p) const
    {
        out += indent + "<polyline points=\"" + points_attr(p.points) + "\" fill=\"none\" stroke=\"" + p.stroke
            + "\" stroke-width=\"" + format_coord(p.width) + "\"" + (p.dashed ? " stroke-dasharray=\"4,3\"" : "")
            + "/>\n";
    }

    void operator()(const CircleShape& c) const
    {
        out += indent + "<circle cx=\"" + format_coord(c.c.x) + "\" cy=\"" + format_coord(c.c.y) + "\" r=\""
            + format_coord(c.r) + "\" fill=\"" + c.fill + "\" stroke=\"" + c.stroke + "\"/>\n";
    }

    void operator()(const PathShape& p) const
    {
        std::string d;
        for (std::size_t i = 0; i < p.points.size(); ++i) {
            d += (i ? " L" : "M") + format_coord(p.points[i].x) + ',' + format_coord(p.points[i].y);
        }
        if (p.closed && !p.points.empty()) {
            d += " Z";
        }
        out += indent + "<path d=\"" + d + "\" fill=\"" + p.fill + "\"" + opacity_attr(p.opacity) + " stroke=\""
            + p.stroke + "\"/>\n";
    }

    void operator()(const TextShape& t) const
    {
        static constexpr const char* anchors[] = {"start", "middle", "end"};
        out += indent + "<text x=\"" + format_coord(t.at.x) + "\" y=\"" + format_coord(t.at.y)
            + "\" font-size=\"" + format_coord(t.size) + "\" text-anchor=\"" + anchors[static_cast<int>(t.anchor)]
            + "\"";
        if (t.rotate != 0.0) {
            out += " transform=\"rotate(" + format_coord(t.rotate) + " " + format_coord(t.at.x) + " "
                + format_coord(t.at.y) + ")\"";
        }
        out += ">" + escape(t.text) + "</text>\n";
    }
};

} // namespace

std::string to_svg(const Scene& scene)
{
    std::string out;
    const std::string w = std::to_string(scene.width);
    const std::string h = std::to_string(scene.height);
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + w + "\" height=\"" + h
        + "\" viewBox=\"0 0 " + w + " " + h + "\" font-family=\"sans-serif\" fill=\"#333333\">\n";
    out += "  <rect x=\"0\" y=\"0\" width=\"" + w + "\" height=\"" + h + "\" fill=\"#ffffff\"/>\n";
    const Writer top{out, "  "};
    for (const Element& e : scene.decorations) {
        std::visit(top, e);
    }
    for (const ScenePanel& panel : scene.panels) {
        out += "  <g class=\"panel\" data-row=\"" + std::to_string(panel.row) + "\" data-col=\""
            + std::to_string(panel.col) + "\">\n";
        out += "    <g class=\"axes\">\n";
        const Writer inner{out, "      "};
        for (const Element& e : panel.axes) {
            std::visit(inner, e);
        }
        out += "    </g>\n    <g class=\"marks\">\n";
        for (const Element& e : panel.marks) {
            std::visit(inner, e);
        }
        out += "    </g>\n  </g>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace chronoplot::render
