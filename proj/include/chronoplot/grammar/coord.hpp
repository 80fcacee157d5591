#pragma once

#include <chronoplot/grammar/time_line.hpp>

#include <optional>
#include <span>
#include <vector>

namespace chronoplot::grammar {

// Loop landmarks in scale units covering the scale domain.
std::vector<double> loop_landmarks(const CoordConfig& cfg, const ScaleState& st);

struct LoopPosition
{
    int cycle = 0;
    double local = 0.0;
};

// Cycle k holds [L_k, L_k+1); nullopt outside [L_0, L_n).
std::optional<LoopPosition> loop_transform(double x, std::span<const double> landmarks);

// Cuts segments at the landmarks and moves every piece into its cycle.
// Pieces outside the landmark range are dropped and counted.
std::vector<Segment> loop_segments(const std::vector<Segment>& segments, std::span<const double> landmarks,
                                   std::size_t* dropped = nullptr);

// Length of each cycle in scale units.
std::vector<double> cycle_lengths(std::span<const double> landmarks);

struct Cell
{
    int row = 0;
    int col = 0;
};

// Throws ConfigError for wrap < 1.
Cell calendar_cell(int cycle, int wrap, Direction direction);

} // namespace chronoplot::grammar
