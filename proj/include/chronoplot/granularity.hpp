#pragma once

#include <chronoplot/instant.hpp>
#include <chronoplot/time_zone.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace chronoplot {

// Linear Gregorian granularities, finest first.
enum class Unit { second, minute, hour, day, week, month, year };

enum class CircularUnit {
    second_of_minute,
    minute_of_hour,
    hour_of_day,
    day_of_week,
    day_of_month,
    day_of_year,
    week_of_year,
    month_of_year,
};

enum class GranularityKind { linear, circular, quasi_circular };

// Descriptor of a linear, circular or quasi-circular granularity.
//
// Circular granularities have a fixed period p >= 2; quasi-circular ones
// (day-of-month, day-of-year, ISO week-of-year) have a period that depends on
// the enclosing cycle, available through quasi_period().
class GranularitySpec
{
public:
    static GranularitySpec linear(Unit unit);
    static GranularitySpec circular(CircularUnit unit);

    GranularityKind kind() const noexcept { return kind_; }
    bool is_linear() const noexcept { return kind_ == GranularityKind::linear; }

    // Throws ArgumentError when the kind does not match.
    Unit unit() const;
    CircularUnit circular_unit() const;

    // Present for circular kind only.
    std::optional<int> period() const noexcept { return period_; }

    std::string name() const;

    friend bool operator==(const GranularitySpec&, const GranularitySpec&) = default;

private:
    GranularitySpec() = default;

    GranularityKind kind_ = GranularityKind::linear;
    std::variant<Unit, CircularUnit> unit_ = Unit::second;
    std::optional<int> period_;
};

std::string_view unit_name(Unit unit);
std::string_view circular_unit_name(CircularUnit unit);

// Accepts `day`, `days`, `1 day`; throws ArgumentError otherwise.
Unit parse_unit(std::string_view text);
// Accepts linear names and `hour-of-day` style circular names.
GranularitySpec parse_granularity(std::string_view text);

// Linear unit the circular granularity counts in (hour-of-day counts hours).
Unit base_unit(CircularUnit unit);

// Period of a quasi-circular granularity for the enclosing cycle with the
// given index (month index for day-of-month, year index for day-of-year,
// ISO year for week-of-year).
int quasi_period(CircularUnit unit, std::int64_t enclosing_index);

// Every granule of `finer` lies inside exactly one granule of `coarser`.
bool refines(Unit finer, Unit coarser);

// Coarsest unit refining both; always exists in the Gregorian lattice.
Unit glb_granularity(Unit a, Unit b);
GranularitySpec glb_granularity(const GranularitySpec& a, const GranularitySpec& b);

// Fixed length in seconds for second, minute, hour; nullopt otherwise.
std::optional<std::int64_t> fixed_length(Unit unit);

// A granule of a linear granularity in a time zone.
struct TimePoint
{
    Unit unit = Unit::day;
    std::int64_t index = 0;
    TimeZoneRef tz;

    friend bool operator==(const TimePoint& a, const TimePoint& b)
    {
        return a.unit == b.unit && a.index == b.index
            && (a.tz == b.tz || (a.tz && b.tz && a.tz->id() == b.tz->id()));
    }
};

struct IntInterval
{
    std::int64_t start;
    std::int64_t end;
};

// Integer bounds; sub-day granules are fixed absolute slices, day and coarser
// granules follow the civil calendar of `tz`.
IntInterval granule_bounds_seconds(Unit unit, std::int64_t index, const TimeZone& tz);
Interval granule_bounds(Unit unit, std::int64_t index, const TimeZone& tz);
Interval granule_bounds(const TimePoint& tp);

// Wall-clock seconds at which granule `index` starts, before zone resolution.
std::int64_t granule_wall_start(Unit unit, std::int64_t index);

// Index of the granule containing `t`.
std::int64_t granule_index(Unit unit, std::int64_t t, const TimeZone& tz);
std::int64_t granule_index(Unit unit, Instant t, const TimeZone& tz);

// Throws IncompatibleGranularity when `target` cannot be derived from the
// point's unit.
std::int64_t to_circular(const TimePoint& tp, const GranularitySpec& target);

// start + align * (end - start); throws ArgumentError outside [0, 1].
Instant to_continuous(const TimePoint& tp, double align = 0.5);

struct IndexRange
{
    std::int64_t first;
    std::int64_t last; // inclusive

    std::int64_t size() const { return last - first + 1; }
    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

// Finer granules covering the point exactly.
IndexRange refine(const TimePoint& tp, Unit finer);

} // namespace chronoplot
