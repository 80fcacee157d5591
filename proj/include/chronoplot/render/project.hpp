#pragma once

#include <chronoplot/render/scene.hpp>

#include <vector>

namespace chronoplot::render {

// Affine map from a data window onto a viewport, y growing upwards.
class CartesianProjection
{
public:
    // Throws RenderError when either data extent is zero or not finite.
    CartesianProjection(double x_lo, double x_hi, double y_lo, double y_hi, Rect viewport);

    Point operator()(double x, double y) const;

private:
    double x_lo_;
    double y_lo_;
    double sx_;
    double sy_;
    Rect vp_;
};

// x to angle (0 at 12 o'clock, clockwise, one turn over [x_lo, x_hi)) and
// y to radius between inner * R and R.
class PolarProjection
{
public:
    // Throws RenderError when either data extent is zero or not finite.
    PolarProjection(double x_lo, double x_hi, double y_lo, double y_hi, Point centre, double radius,
                    double inner);

    Point operator()(double x, double y) const;
    double angle(double x) const; // radians
    double radius(double y) const;
    Point centre() const { return centre_; }
    double outer() const { return radius_; }

    // Device points of the data polyline with vertices added so that no two
    // consecutive vertices are more than 2 degrees apart.
    std::vector<Point> arc(const std::vector<grammar::Vec2>& data) const;

private:
    double x_lo_;
    double x_span_;
    double y_lo_;
    double y_span_;
    Point centre_;
    double radius_;
    double inner_;
};

} // namespace chronoplot::render
