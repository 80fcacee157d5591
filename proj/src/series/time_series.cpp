#include <chronoplot/time_series.hpp>

#include <chronoplot/civil.hpp>
#include <chronoplot/error.hpp>

#include <algorithm>
#include <set>

namespace chronoplot {

TimeSeries::TimeSeries(std::string index_name, Unit unit, TimeZoneRef tz,
                       std::vector<std::string> key_names, std::vector<std::string> measure_names,
                       std::vector<Row> rows)
    : index_name_(std::move(index_name))
    , unit_(unit)
    , tz_(tz ? std::move(tz) : utc())
    , key_names_(std::move(key_names))
    , measure_names_(std::move(measure_names))
    , rows_(std::move(rows))
{
    if (measure_names_.empty()) {
        throw ArgumentError("a time series needs at least one measure column");
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].keys.size() != key_names_.size() || rows_[i].measures.size() != measure_names_.size()) {
            throw ArgumentError("row " + std::to_string(i) + " does not match the declared columns");
        }
    }
}

std::optional<std::size_t> TimeSeries::measure_column(std::string_view name) const
{
    auto it = std::find(measure_names_.begin(), measure_names_.end(), name);
    if (it == measure_names_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - measure_names_.begin());
}

std::optional<std::size_t> TimeSeries::key_column(std::string_view name) const
{
    auto it = std::find(key_names_.begin(), key_names_.end(), name);
    if (it == key_names_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - key_names_.begin());
}

std::vector<KeyTuple> TimeSeries::distinct_keys() const
{
    std::vector<KeyTuple> out;
    std::set<KeyTuple> seen;
    for (const Row& r : rows_) {
        if (seen.insert(r.keys).second) {
            out.push_back(r.keys);
        }
    }
    return out;
}

std::string format_index(Unit unit, std::int64_t index, const TimeZone& tz)
{
    switch (unit) {
    case Unit::year: {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "%04lld", static_cast<long long>(1970 + index));
        return buf;
    }
    case Unit::month: {
        const CivilDate d = month_start(index);
        return format_date(d).substr(0, 7);
    }
    case Unit::week:
    case Unit::day:
        return format_date(civil_from_days(floor_div(granule_wall_start(unit, index), seconds_per_day)));
    default: {
        const std::int64_t t = granule_bounds_seconds(unit, index, tz).start;
        const std::int64_t offset = tz.offset_at(t);
        return format_datetime(civil_from_wall(t + offset)) + format_offset(offset);
    }
    }
}

std::optional<std::int64_t> parse_index(std::string_view text, Unit unit, const TimeZone& tz,
                                        std::string* warning, std::string* error)
{
    auto fail = [&](std::string msg) -> std::optional<std::int64_t> {
        if (error) {
            *error = std::move(msg);
        }
        return std::nullopt;
    };
    const auto parsed = parse_iso8601(text);
    if (!parsed) {
        return fail("cannot parse '" + std::string(text) + "' as an ISO-8601 date or time");
    }
    using P = ParsedTimestamp::Precision;
    const P needed = unit == Unit::year ? P::year
        : unit == Unit::month           ? P::month
        : unit <= Unit::hour            ? P::second
                                        : P::day;
    if (parsed->precision < needed) {
        return fail("'" + std::string(text) + "' is too coarse for " + std::string(unit_name(unit))
                    + " granularity");
    }

    std::int64_t wall = wall_from_civil(parsed->civil);
    if (parsed->utc_offset) {
        // Re-express an explicit offset in the series zone.
        const std::int64_t t = wall - *parsed->utc_offset;
        if (unit <= Unit::hour) {
            return granule_index(unit, t, tz);
        }
        wall = t + tz.offset_at(t);
    }
    if (unit > Unit::hour) {
        const std::int64_t day = floor_div(wall, seconds_per_day);
        switch (unit) {
        case Unit::day: return day;
        case Unit::week: return floor_div(day + 3, 7);
        case Unit::month: return month_index(civil_from_days(day));
        default: return civil_from_days(day).year - 1970;
        }
    }
    const CivilLookup lookup = tz.to_absolute(WallTime{static_cast<double>(wall)});
    if (const auto* u = std::get_if<CivilUnique>(&lookup)) {
        return granule_index(unit, static_cast<std::int64_t>(u->instant.seconds), tz);
    }
    if (const auto* a = std::get_if<CivilAmbiguous>(&lookup)) {
        if (warning) {
            *warning = "'" + std::string(text) + "' is ambiguous in zone '" + tz.id()
                + "'; using the earlier occurrence";
        }
        return granule_index(unit, static_cast<std::int64_t>(a->earlier.seconds), tz);
    }
    return fail("'" + std::string(text) + "' does not exist in zone '" + tz.id() + "' (skipped by a transition)");
}

} // namespace chronoplot
