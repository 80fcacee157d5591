#pragma once

#include <chronoplot/grammar/scale.hpp>

#include <vector>

namespace chronoplot::grammar {

// An observation on its way to the time axis.
struct TimedValue
{
    TimePoint tp;
    double y = 0.0; // NaN for a missing measure
    double extra_offset = 0.0; // seconds from a mapped xtimeoffset column
    int group = 0;
};

struct MappedPoint
{
    double x = 0.0;       // scale units
    double y = 0.0;
    double x_offset = 0.0; // seconds
    int group = 0;
    Instant absolute_t;
    double frame_x = 0.0; // x before warping
};

// Civil mode: x follows each point's own wall clock and x_offset is the
// point's UTC offset minus the reference zone's base offset. Absolute mode:
// x follows the instant and x_offset is zero. A mapped xtimeoffset adds to
// both.
std::vector<MappedPoint> position_time(const std::vector<TimedValue>& values, const ScaleState& st);

} // namespace chronoplot::grammar
