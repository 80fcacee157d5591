#include <chronoplot/render/project.hpp>

#include <chronoplot/error.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace chronoplot::render {

namespace {

void require_extent(double lo, double hi, const char* axis)
{
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
        throw RenderError(std::string("degenerate ") + axis + " domain");
    }
}

constexpr double max_step = 2.0 * std::numbers::pi / 180.0;

} // namespace

CartesianProjection::CartesianProjection(double x_lo, double x_hi, double y_lo, double y_hi, Rect viewport)
    : x_lo_(x_lo), y_lo_(y_lo), vp_(viewport)
{
    require_extent(x_lo, x_hi, "x");
    require_extent(y_lo, y_hi, "y");
    sx_ = viewport.w / (x_hi - x_lo);
    sy_ = viewport.h / (y_hi - y_lo);
}

Point CartesianProjection::operator()(double x, double y) const
{
    return {vp_.x + (x - x_lo_) * sx_, vp_.y + vp_.h - (y - y_lo_) * sy_};
}

PolarProjection::PolarProjection(double x_lo, double x_hi, double y_lo, double y_hi, Point centre, double radius,
                                 double inner)
    : x_lo_(x_lo), x_span_(x_hi - x_lo), y_lo_(y_lo), y_span_(y_hi - y_lo), centre_(centre), radius_(radius),
      inner_(inner)
{
    require_extent(x_lo, x_hi, "x");
    require_extent(y_lo, y_hi, "y");
    if (!(radius > 0.0)) {
        throw RenderError("polar panel has no room");
    }
}

double PolarProjection::angle(double x) const
{
    return (x - x_lo_) / x_span_ * 2.0 * std::numbers::pi;
}

double PolarProjection::radius(double y) const
{
    const double norm = std::clamp((y - y_lo_) / y_span_, 0.0, 1.0);
    return radius_ * (inner_ + (1.0 - inner_) * norm);
}

Point PolarProjection::operator()(double x, double y) const
{
    const double a = angle(x);
    const double r = radius(y);
    return {centre_.x + r * std::sin(a), centre_.y - r * std::cos(a)};
}

std::vector<Point> PolarProjection::arc(const std::vector<grammar::Vec2>& data) const
{
    std::vector<Point> out;
    if (data.empty()) {
        return out;
    }
    out.push_back((*this)(data.front().x, data.front().y));
    for (std::size_t i = 1; i < data.size(); ++i) {
        const grammar::Vec2& a = data[i - 1];
        const grammar::Vec2& b = data[i];
        const double sweep = std::abs(angle(b.x) - angle(a.x));
        const int steps = std::max(1, static_cast<int>(std::ceil(sweep / max_step - 1e-12)));
        for (int s = 1; s <= steps; ++s) {
            const double f = static_cast<double>(s) / steps;
            out.push_back((*this)(a.x + (b.x - a.x) * f, a.y + (b.y - a.y) * f));
        }
    }
    return out;
}

} // namespace chronoplot::render
