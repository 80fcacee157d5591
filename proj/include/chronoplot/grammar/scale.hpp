#pragma once

#include <chronoplot/granularity.hpp>
#include <chronoplot/grammar/plot_spec.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace chronoplot::grammar {

// The seconds axis positions live on before warping.
//
// Absolute frame: values are absolute instants; calendar boundaries (ticks,
// time_warps, time_loops) are taken in the reference zone. Civil frame: values
// are wall-clock seconds; calendar boundaries are plain Gregorian boundaries
// of those wall readings.
struct Frame
{
    PositionMode mode = PositionMode::absolute;
    TimeZoneRef reference;

    // Zone whose granules are the calendar boundaries of this frame.
    const TimeZone& calendar() const;

    // Frame value of an instant with no offset aesthetic applied: the instant
    // itself (absolute) or its wall reading in the reference zone (civil).
    double from_instant(Instant t) const;

    // Resolves a spec landmark.
    double from_literal(const TimeLiteral& lit) const;

    // Civil reading shown for a frame value.
    CivilDateTime to_civil(double frame_value) const;
};

// Piecewise-linear time warp through strictly increasing landmarks: the k-th
// landmark maps to k, values in between interpolate, values outside extend
// the nearest interval's line.
class Warp
{
public:
    // Throws ConfigError for fewer than two landmarks or a non-increasing list.
    explicit Warp(std::vector<double> landmarks);

    double operator()(double t) const;
    double inverse(double u) const;
    const std::vector<double>& landmarks() const noexcept { return landmarks_; }

private:
    std::vector<double> landmarks_;
};

// Empty `landmarks` is the identity.
double warp(double t, std::span<const double> landmarks);

struct Breaks
{
    std::vector<double> positions; // frame values
    std::vector<std::string> labels;
    std::optional<Unit> unit;
    int step = 1;
};

struct ScaleState
{
    Unit common = Unit::day;
    Frame frame;
    double align = 0.5;
    double frame_lo = 0.0; // domain before warping
    double frame_hi = 0.0;
    std::optional<Warp> warp;
    std::optional<Unit> warp_unit;
    Breaks breaks;

    double to_scale(double frame_value) const { return warp ? (*warp)(frame_value) : frame_value; }
    double domain_lo() const { return to_scale(frame_lo); }
    double domain_hi() const { return to_scale(frame_hi); }
};

struct ScaleLayer
{
    Unit unit;
    std::vector<TimePoint> points;
    // Frame offsets (seconds) from an offset aesthetic, parallel to points;
    // empty means none.
    std::vector<double> offsets;
    // Whole granule extents belong in the domain (interval geometries).
    bool include_extent = false;
};

// Trains the time scale: common granularity is the glb of all layer units,
// the domain spans every converted point, warps are resolved to landmarks.
// Throws ScaleError when there is nothing to train on.
ScaleState train_scale(const std::vector<ScaleLayer>& layers, const ScaleTimeConfig& cfg, const Frame& frame);

// Frame value of a point at `align` through its granule.
double frame_position(const TimePoint& tp, double align, const Frame& frame);

// warp(to_continuous(tp, align)) in the state's frame.
double map_position(const TimePoint& tp, const ScaleState& st, double align = 0.5);

// Calendar-aware ticks on granule boundaries of the coarsest lattice level
// giving between target/2 and 2*target ticks, never finer than `floor`.
Breaks compute_breaks(double frame_lo, double frame_hi, Unit floor, int target, const Frame& frame);

// Tick label for a boundary at the given granularity.
std::string format_tick(double frame_value, Unit unit, const Frame& frame);

// Round-number ticks for a value axis.
std::vector<double> linear_breaks(double lo, double hi, int target);
std::string format_number(double v, double step);

} // namespace chronoplot::grammar
