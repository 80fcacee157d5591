#pragma once

#include <chronoplot/instant.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace chronoplot {

struct Transition
{
    std::int64_t at;           // absolute seconds (UTC)
    std::int64_t offset_after; // seconds east of UTC
};

// Result of reading a civil wall clock back into absolute time.
struct CivilUnique
{
    Instant instant;
};

// Fall-back repeat: the wall reading occurs twice.
struct CivilAmbiguous
{
    Instant earlier;
    Instant later;
};

// Spring-forward skip: the wall reading never occurs.
struct CivilGap
{
    std::int64_t before_offset;
    std::int64_t after_offset;
    std::int64_t transition_at;
};

using CivilLookup = std::variant<CivilUnique, CivilAmbiguous, CivilGap>;

struct CivilReading
{
    WallTime wall;
    std::int64_t offset;
};

// An explicit offset transition table. Immutable once built.
class TimeZone
{
public:
    // Throws ConfigError when transitions are not strictly increasing or a
    // transition does not change the offset.
    TimeZone(std::string id, std::int64_t base_offset, std::vector<Transition> transitions = {});

    const std::string& id() const noexcept { return id_; }
    std::int64_t base_offset() const noexcept { return base_offset_; }
    const std::vector<Transition>& transitions() const noexcept { return transitions_; }
    bool is_fixed() const noexcept { return transitions_.empty(); }

    std::int64_t offset_at(Instant t) const;
    std::int64_t offset_at(std::int64_t t) const;

    CivilReading to_civil(Instant t) const;
    CivilLookup to_absolute(WallTime wall) const;

    // Integer variant used by calendar arithmetic. Ambiguous readings take the
    // earlier instant; readings inside a gap take the transition instant.
    std::int64_t resolve_wall(std::int64_t wall) const;

private:
    std::string id_;
    std::int64_t base_offset_;
    std::vector<Transition> transitions_;
};

using TimeZoneRef = std::shared_ptr<const TimeZone>;

CivilReading absolute_to_civil(Instant t, const TimeZone& tz);
CivilLookup civil_to_absolute(WallTime wall, const TimeZone& tz);

// Parses the line-oriented zone format:
//
//   <tz-id>
//   base <offset-seconds>
//   transition <ISO-8601 UTC instant> <offset-seconds>
//   ...
//
// Blank lines are ignored; anything else that does not match is a ConfigError.
TimeZone parse_time_zone(std::string_view text);
TimeZone load_time_zone(const std::filesystem::path& path);

// Resolves zone ids. Built-ins: `UTC`, `fixed+HH`, `fixed-HH`, `fixed+HH:MM`,
// and the synthetic DST zones `dst-spring` and `dst-fall`.
class TimeZoneRegistry
{
public:
    TimeZoneRegistry() = default;

    void add(TimeZone tz);
    void load(const std::filesystem::path& path);

    // Throws ConfigError for unknown ids.
    TimeZoneRef get(std::string_view id) const;
    bool contains(std::string_view id) const;

    static TimeZoneRef builtin(std::string_view id);

private:
    std::map<std::string, TimeZoneRef, std::less<>> zones_;
};

TimeZoneRef utc();

// Instants of the built-in synthetic DST transitions (2021-03-28 and
// 2021-10-31, 02:00 UTC).
inline constexpr std::int64_t dst_spring_at = 1616896800;
inline constexpr std::int64_t dst_fall_at = 1635645600;

} // namespace chronoplot
