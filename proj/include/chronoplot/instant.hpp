#pragma once

#include <compare>

namespace chronoplot {

// Seconds since 1970-01-01T00:00:00 UTC, leap seconds ignored.
struct Instant
{
    double seconds = 0.0;

    friend constexpr auto operator<=>(const Instant&, const Instant&) = default;
};

// Seconds of a civil wall clock since its own 1970-01-01T00:00:00.
struct WallTime
{
    double seconds = 0.0;

    friend constexpr auto operator<=>(const WallTime&, const WallTime&) = default;
};

// Half-open [start, end).
struct Interval
{
    Instant start;
    Instant end;

    constexpr double length() const { return end.seconds - start.seconds; }
    friend constexpr bool operator==(const Interval&, const Interval&) = default;
};

} // namespace chronoplot
