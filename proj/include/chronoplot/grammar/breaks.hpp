#pragma once

#include <chronoplot/grammar/scale.hpp>

#include <span>
#include <string>
#include <vector>

namespace chronoplot::grammar {

struct Axis
{
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> ticks;
    std::vector<std::string> labels;
};

// Linear time axis over the scale domain with calendar ticks.
Axis time_axis(const ScaleState& st);

// Cycle-local axis [0, longest cycle). Calendar loops are labelled by their
// circular unit (clock hours, Monday-first weekdays, days of the month,
// month names); loops justified by a warp at the same granularity are
// labelled in percent of the cycle; explicit loops by elapsed time.
Axis loop_axis(const CoordConfig& cfg, const ScaleState& st, std::span<const double> landmarks);

// Round-number value axis padded by 5% each side.
Axis value_axis(double lo, double hi, bool include_zero);

std::string_view weekday_name(int monday_based);
std::string_view month_name(int month); // 1..12

} // namespace chronoplot::grammar
