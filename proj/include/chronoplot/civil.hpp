#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

// Proleptic Gregorian calendar arithmetic on plain integers.
//
// Day numbers count days from 1970-01-01 (day 0). "Wall seconds" count
// seconds of a civil clock from 1970-01-01T00:00:00 of that clock, i.e.
// days * 86400 + seconds of day, with no time zone attached.

namespace chronoplot {

inline constexpr std::int64_t seconds_per_day = 86400;

constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    const std::int64_t q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

constexpr std::int64_t floor_mod(std::int64_t a, std::int64_t b)
{
    return a - floor_div(a, b) * b;
}

struct CivilDate
{
    std::int64_t year = 1970;
    int month = 1; // 1..12
    int day = 1;   // 1..31

    friend constexpr bool operator==(const CivilDate&, const CivilDate&) = default;
};

struct CivilDateTime
{
    CivilDate date;
    int hour = 0;
    int minute = 0;
    int second = 0;

    friend constexpr bool operator==(const CivilDateTime&, const CivilDateTime&) = default;
};

constexpr bool is_leap_year(std::int64_t y)
{
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

constexpr int days_in_month(std::int64_t y, int m)
{
    constexpr int lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return (m == 2 && is_leap_year(y)) ? 29 : lengths[m - 1];
}

constexpr int days_in_year(std::int64_t y)
{
    return is_leap_year(y) ? 366 : 365;
}

// Era-based conversion (400-year cycles of 146097 days).
constexpr std::int64_t days_from_civil(const CivilDate& d)
{
    const std::int64_t y = d.year - (d.month <= 2 ? 1 : 0);
    const std::int64_t era = floor_div(y, 400);
    const std::int64_t yoe = y - era * 400;
    const std::int64_t mp = (d.month + 9) % 12; // March = 0
    const std::int64_t doy = (153 * mp + 2) / 5 + d.day - 1;
    const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

constexpr CivilDate civil_from_days(std::int64_t z)
{
    z += 719468;
    const std::int64_t era = floor_div(z, 146097);
    const std::int64_t doe = z - era * 146097;
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    const int day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    const int month = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    const std::int64_t year = yoe + era * 400 + (month <= 2 ? 1 : 0);
    return CivilDate{year, month, day};
}

// Monday = 0 ... Sunday = 6.
constexpr int weekday_from_days(std::int64_t z)
{
    // 1970-01-01 was a Thursday.
    return static_cast<int>(floor_mod(z + 3, 7));
}

constexpr int day_of_year(const CivilDate& d)
{
    return static_cast<int>(days_from_civil(d) - days_from_civil(CivilDate{d.year, 1, 1}));
}

constexpr std::int64_t wall_from_civil(const CivilDateTime& c)
{
    return days_from_civil(c.date) * seconds_per_day + c.hour * 3600 + c.minute * 60 + c.second;
}

constexpr CivilDateTime civil_from_wall(std::int64_t wall)
{
    const std::int64_t days = floor_div(wall, seconds_per_day);
    const std::int64_t sod = wall - days * seconds_per_day;
    return CivilDateTime{civil_from_days(days),
                         static_cast<int>(sod / 3600),
                         static_cast<int>(sod / 60 % 60),
                         static_cast<int>(sod % 60)};
}

// Month index counted from January 1970.
constexpr std::int64_t month_index(const CivilDate& d)
{
    return (d.year - 1970) * 12 + (d.month - 1);
}

constexpr CivilDate month_start(std::int64_t month_idx)
{
    return CivilDate{1970 + floor_div(month_idx, 12), static_cast<int>(floor_mod(month_idx, 12)) + 1, 1};
}

// ISO-8601 week: (ISO year, 0-based week number).
struct IsoWeek
{
    std::int64_t year;
    int week;
};

IsoWeek iso_week_from_days(std::int64_t z);

// Parses `YYYY`, `YYYY-MM`, `YYYY-MM-DD`, `YYYY-MM-DDTHH:MM:SS` (a space is
// accepted for the `T`). Missing trailing fields default to their minimum.
// An optional trailing `Z` or `+HH:MM`/`-HH:MM` is returned in `utc_offset`.
struct ParsedTimestamp
{
    CivilDateTime civil;
    enum class Precision { year, month, day, second } precision = Precision::second;
    std::optional<std::int64_t> utc_offset;
};

std::optional<ParsedTimestamp> parse_iso8601(std::string_view text);

std::string format_date(const CivilDate& d);          // YYYY-MM-DD
std::string format_datetime(const CivilDateTime& c);  // YYYY-MM-DDTHH:MM:SS
std::string format_offset(std::int64_t offset_seconds); // +HH:MM

} // namespace chronoplot
