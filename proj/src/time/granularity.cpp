#include <chronoplot/granularity.hpp>

#include <chronoplot/civil.hpp>
#include <chronoplot/error.hpp>

#include <array>
#include <cmath>

namespace chronoplot {

namespace {

constexpr std::array<std::string_view, 7> unit_names = {
    "second", "minute", "hour", "day", "week", "month", "year"};

constexpr std::array<std::string_view, 8> circular_names = {
    "second-of-minute", "minute-of-hour", "hour-of-day", "day-of-week",
    "day-of-month", "day-of-year", "week-of-year", "month-of-year"};

std::optional<int> fixed_period(CircularUnit u)
{
    switch (u) {
    case CircularUnit::second_of_minute: return 60;
    case CircularUnit::minute_of_hour: return 60;
    case CircularUnit::hour_of_day: return 24;
    case CircularUnit::day_of_week: return 7;
    case CircularUnit::month_of_year: return 12;
    default: return std::nullopt;
    }
}

} // namespace

GranularitySpec GranularitySpec::linear(Unit unit)
{
    GranularitySpec g;
    g.kind_ = GranularityKind::linear;
    g.unit_ = unit;
    return g;
}

GranularitySpec GranularitySpec::circular(CircularUnit unit)
{
    GranularitySpec g;
    g.unit_ = unit;
    g.period_ = fixed_period(unit);
    g.kind_ = g.period_ ? GranularityKind::circular : GranularityKind::quasi_circular;
    return g;
}

Unit GranularitySpec::unit() const
{
    if (!is_linear()) {
        throw ArgumentError("granularity '" + name() + "' is not linear");
    }
    return std::get<Unit>(unit_);
}

CircularUnit GranularitySpec::circular_unit() const
{
    if (is_linear()) {
        throw ArgumentError("granularity '" + name() + "' is not circular");
    }
    return std::get<CircularUnit>(unit_);
}

std::string GranularitySpec::name() const
{
    if (const auto* u = std::get_if<Unit>(&unit_)) {
        return std::string(unit_name(*u));
    }
    return std::string(circular_unit_name(std::get<CircularUnit>(unit_)));
}

std::string_view unit_name(Unit unit)
{
    return unit_names[static_cast<std::size_t>(unit)];
}

std::string_view circular_unit_name(CircularUnit unit)
{
    return circular_names[static_cast<std::size_t>(unit)];
}

Unit parse_unit(std::string_view text)
{
    std::string_view s = text;
    if (s.size() > 2 && s.substr(0, 2) == "1 ") {
        s.remove_prefix(2);
    }
    if (s.size() > 1 && s.back() == 's') {
        s.remove_suffix(1);
    }
    for (std::size_t i = 0; i < unit_names.size(); ++i) {
        if (s == unit_names[i]) {
            return static_cast<Unit>(i);
        }
    }
    throw ArgumentError("unknown granularity '" + std::string(text) + "'");
}

GranularitySpec parse_granularity(std::string_view text)
{
    for (std::size_t i = 0; i < circular_names.size(); ++i) {
        if (text == circular_names[i]) {
            return GranularitySpec::circular(static_cast<CircularUnit>(i));
        }
    }
    return GranularitySpec::linear(parse_unit(text));
}

Unit base_unit(CircularUnit unit)
{
    switch (unit) {
    case CircularUnit::second_of_minute: return Unit::second;
    case CircularUnit::minute_of_hour: return Unit::minute;
    case CircularUnit::hour_of_day: return Unit::hour;
    case CircularUnit::day_of_week:
    case CircularUnit::day_of_month:
    case CircularUnit::day_of_year: return Unit::day;
    case CircularUnit::week_of_year: return Unit::week;
    case CircularUnit::month_of_year: return Unit::month;
    }
    return Unit::day;
}

int quasi_period(CircularUnit unit, std::int64_t enclosing)
{
    switch (unit) {
    case CircularUnit::day_of_month: {
        const CivilDate m = month_start(enclosing);
        return days_in_month(m.year, m.month);
    }
    case CircularUnit::day_of_year: return days_in_year(1970 + enclosing);
    case CircularUnit::week_of_year: {
        // ISO years with 53 weeks contain 28 December in week 52 (0-based).
        return iso_week_from_days(days_from_civil(CivilDate{enclosing, 12, 28})).week + 1;
    }
    default: return *fixed_period(unit);
    }
}

bool refines(Unit finer, Unit coarser)
{
    if (finer == coarser) {
        return true;
    }
    const auto f = static_cast<int>(finer);
    const auto c = static_cast<int>(coarser);
    if (f > c) {
        return false;
    }
    // Weeks straddle months and years; nothing but day and finer refines week.
    if (coarser == Unit::week) {
        return finer <= Unit::day;
    }
    if (finer == Unit::week) {
        return false;
    }
    return true;
}

Unit glb_granularity(Unit a, Unit b)
{
    if (refines(a, b)) {
        return a;
    }
    if (refines(b, a)) {
        return b;
    }
    return Unit::day;
}

GranularitySpec glb_granularity(const GranularitySpec& a, const GranularitySpec& b)
{
    if (!a.is_linear() || !b.is_linear()) {
        throw IncompatibleGranularity("common granularity requires linear granularities, got '"
                                      + a.name() + "' and '" + b.name() + "'");
    }
    return GranularitySpec::linear(glb_granularity(a.unit(), b.unit()));
}

std::optional<std::int64_t> fixed_length(Unit unit)
{
    switch (unit) {
    case Unit::second: return 1;
    case Unit::minute: return 60;
    case Unit::hour: return 3600;
    default: return std::nullopt;
    }
}

std::int64_t granule_wall_start(Unit unit, std::int64_t index)
{
    switch (unit) {
    case Unit::second: return index;
    case Unit::minute: return index * 60;
    case Unit::hour: return index * 3600;
    case Unit::day: return index * seconds_per_day;
    // Week 0 starts Monday 1969-12-29 (day -3).
    case Unit::week: return (index * 7 - 3) * seconds_per_day;
    case Unit::month: return days_from_civil(month_start(index)) * seconds_per_day;
    case Unit::year: return days_from_civil(CivilDate{1970 + index, 1, 1}) * seconds_per_day;
    }
    return 0;
}

IntInterval granule_bounds_seconds(Unit unit, std::int64_t index, const TimeZone& tz)
{
    if (const auto len = fixed_length(unit)) {
        return IntInterval{index * *len, (index + 1) * *len};
    }
    return IntInterval{tz.resolve_wall(granule_wall_start(unit, index)),
                       tz.resolve_wall(granule_wall_start(unit, index + 1))};
}

Interval granule_bounds(Unit unit, std::int64_t index, const TimeZone& tz)
{
    const IntInterval b = granule_bounds_seconds(unit, index, tz);
    return Interval{Instant{static_cast<double>(b.start)}, Instant{static_cast<double>(b.end)}};
}

Interval granule_bounds(const TimePoint& tp)
{
    return granule_bounds(tp.unit, tp.index, tp.tz ? *tp.tz : *utc());
}

namespace {

std::int64_t civil_index_of_day(Unit unit, std::int64_t day)
{
    switch (unit) {
    case Unit::day: return day;
    case Unit::week: return floor_div(day + 3, 7);
    case Unit::month: return month_index(civil_from_days(day));
    case Unit::year: return civil_from_days(day).year - 1970;
    default: return day;
    }
}

} // namespace

std::int64_t granule_index(Unit unit, std::int64_t t, const TimeZone& tz)
{
    if (const auto len = fixed_length(unit)) {
        return floor_div(t, *len);
    }
    const std::int64_t wall = t + tz.offset_at(t);
    std::int64_t idx = civil_index_of_day(unit, floor_div(wall, seconds_per_day));
    // Zone transitions near a granule boundary can put the wall reading on the
    // other side of the resolved boundary; settle against the bounds.
    while (t < granule_bounds_seconds(unit, idx, tz).start) {
        --idx;
    }
    while (t >= granule_bounds_seconds(unit, idx, tz).end) {
        ++idx;
    }
    return idx;
}

std::int64_t granule_index(Unit unit, Instant t, const TimeZone& tz)
{
    return granule_index(unit, static_cast<std::int64_t>(std::floor(t.seconds)), tz);
}

std::int64_t to_circular(const TimePoint& tp, const GranularitySpec& target)
{
    if (target.is_linear()) {
        throw IncompatibleGranularity("target granularity '" + target.name() + "' is not circular");
    }
    const CircularUnit cu = target.circular_unit();
    if (!refines(tp.unit, base_unit(cu))) {
        throw IncompatibleGranularity("cannot derive " + target.name() + " from "
                                      + std::string(unit_name(tp.unit)) + " granules");
    }
    const TimeZone& tz = tp.tz ? *tp.tz : *utc();

    // Wall reading of the granule's first second.
    std::int64_t wall = granule_wall_start(tp.unit, tp.index);
    if (fixed_length(tp.unit)) {
        wall += tz.offset_at(wall);
    }
    const std::int64_t day = floor_div(wall, seconds_per_day);

    switch (cu) {
    case CircularUnit::second_of_minute: return floor_mod(wall, 60);
    case CircularUnit::minute_of_hour: return floor_mod(floor_div(wall, 60), 60);
    case CircularUnit::hour_of_day: return floor_mod(floor_div(wall, 3600), 24);
    case CircularUnit::day_of_week: return weekday_from_days(day);
    case CircularUnit::day_of_month: return civil_from_days(day).day - 1;
    case CircularUnit::day_of_year: return day_of_year(civil_from_days(day));
    case CircularUnit::week_of_year: return iso_week_from_days(day).week;
    case CircularUnit::month_of_year: return civil_from_days(day).month - 1;
    }
    return 0;
}

Instant to_continuous(const TimePoint& tp, double align)
{
    if (!(align >= 0.0 && align <= 1.0)) {
        throw ArgumentError("alignment must lie in [0, 1]");
    }
    const Interval b = granule_bounds(tp);
    return Instant{b.start.seconds + align * b.length()};
}

IndexRange refine(const TimePoint& tp, Unit finer)
{
    if (!refines(finer, tp.unit)) {
        throw IncompatibleGranularity(std::string(unit_name(finer)) + " does not refine "
                                      + std::string(unit_name(tp.unit)));
    }
    const TimeZone& tz = tp.tz ? *tp.tz : *utc();
    const IntInterval parent = granule_bounds_seconds(tp.unit, tp.index, tz);
    const IndexRange range{granule_index(finer, parent.start, tz), granule_index(finer, parent.end - 1, tz)};
    if (granule_bounds_seconds(finer, range.first, tz).start != parent.start
        || granule_bounds_seconds(finer, range.last, tz).end != parent.end) {
        throw IncompatibleGranularity(std::string(unit_name(finer)) + " granules do not nest inside "
                                      + std::string(unit_name(tp.unit)) + " " + std::to_string(tp.index)
                                      + " in zone '" + tz.id() + "'");
    }
    return range;
}

} // namespace chronoplot
