#include <chronoplot/time_zone.hpp>

#include <chronoplot/civil.hpp>
#include <chronoplot/error.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace chronoplot {

TimeZone::TimeZone(std::string id, std::int64_t base_offset, std::vector<Transition> transitions)
    : id_(std::move(id))
    , base_offset_(base_offset)
    , transitions_(std::move(transitions))
{
    if (id_.empty()) {
        throw ConfigError("time zone id must not be empty");
    }
    std::int64_t previous = base_offset_;
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        if (i > 0 && transitions_[i].at <= transitions_[i - 1].at) {
            throw ConfigError("time zone '" + id_ + "': transition instants must be strictly increasing");
        }
        if (transitions_[i].offset_after == previous) {
            throw ConfigError("time zone '" + id_ + "': transition does not change the offset");
        }
        previous = transitions_[i].offset_after;
    }
}

std::int64_t TimeZone::offset_at(std::int64_t t) const
{
    auto it = std::upper_bound(transitions_.begin(), transitions_.end(), t,
                               [](std::int64_t v, const Transition& tr) { return v < tr.at; });
    return it == transitions_.begin() ? base_offset_ : std::prev(it)->offset_after;
}

std::int64_t TimeZone::offset_at(Instant t) const
{
    auto it = std::upper_bound(transitions_.begin(), transitions_.end(), t.seconds,
                               [](double v, const Transition& tr) { return v < static_cast<double>(tr.at); });
    return it == transitions_.begin() ? base_offset_ : std::prev(it)->offset_after;
}

CivilReading TimeZone::to_civil(Instant t) const
{
    const std::int64_t offset = offset_at(t);
    return CivilReading{WallTime{t.seconds + static_cast<double>(offset)}, offset};
}

CivilLookup TimeZone::to_absolute(WallTime wall) const
{
    // Period j covers [start_j, end_j) of absolute time with offset o_j; a wall
    // reading w is realised in period j iff w - o_j falls inside it.
    std::vector<double> hits;
    const std::size_t periods = transitions_.size() + 1;
    for (std::size_t j = 0; j < periods; ++j) {
        const std::int64_t offset = j == 0 ? base_offset_ : transitions_[j - 1].offset_after;
        const double t = wall.seconds - static_cast<double>(offset);
        const bool after_start = j == 0 || t >= static_cast<double>(transitions_[j - 1].at);
        const bool before_end = j + 1 == periods || t < static_cast<double>(transitions_[j].at);
        if (after_start && before_end) {
            hits.push_back(t);
        }
    }
    if (hits.size() == 1) {
        return CivilUnique{Instant{hits.front()}};
    }
    if (hits.size() >= 2) {
        return CivilAmbiguous{Instant{hits.front()}, Instant{hits.back()}};
    }
    for (std::size_t k = 0; k < transitions_.size(); ++k) {
        const std::int64_t before = k == 0 ? base_offset_ : transitions_[k - 1].offset_after;
        const std::int64_t after = transitions_[k].offset_after;
        const double at = static_cast<double>(transitions_[k].at);
        if (wall.seconds >= at + static_cast<double>(before) && wall.seconds < at + static_cast<double>(after)) {
            return CivilGap{before, after, transitions_[k].at};
        }
    }
    // Unreachable for a valid table: every wall reading outside a forward
    // jump is realised by at least one period.
    throw ConfigError("time zone '" + id_ + "': inconsistent transition table");
}

std::int64_t TimeZone::resolve_wall(std::int64_t wall) const
{
    if (transitions_.empty()) {
        return wall - base_offset_;
    }
    const CivilLookup lookup = to_absolute(WallTime{static_cast<double>(wall)});
    if (const auto* u = std::get_if<CivilUnique>(&lookup)) {
        return static_cast<std::int64_t>(u->instant.seconds);
    }
    if (const auto* a = std::get_if<CivilAmbiguous>(&lookup)) {
        return static_cast<std::int64_t>(a->earlier.seconds);
    }
    return std::get<CivilGap>(lookup).transition_at;
}

CivilReading absolute_to_civil(Instant t, const TimeZone& tz)
{
    return tz.to_civil(t);
}

CivilLookup civil_to_absolute(WallTime wall, const TimeZone& tz)
{
    return tz.to_absolute(wall);
}

namespace {

std::int64_t parse_offset_field(std::string_view field, std::size_t line)
{
    std::int64_t value = 0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("zone file line " + std::to_string(line) + ": bad offset '" + std::string(field) + "'");
    }
    if (value <= -86400 || value >= 86400) {
        throw ConfigError("zone file line " + std::to_string(line) + ": offset out of range");
    }
    return value;
}

std::vector<std::string_view> split_ws(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') {
            ++i;
        }
        if (i > start) {
            out.push_back(s.substr(start, i - start));
        }
    }
    return out;
}

} // namespace

TimeZone parse_time_zone(std::string_view text)
{
    std::string id;
    std::optional<std::int64_t> base;
    std::vector<Transition> transitions;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        const std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        const auto fields = split_ws(line);
        if (fields.empty()) {
            continue;
        }
        const auto where = "zone file line " + std::to_string(line_no) + ": ";
        if (id.empty()) {
            if (fields.size() != 1) {
                throw ConfigError(where + "expected a single time zone id");
            }
            id = std::string(fields[0]);
            continue;
        }
        if (fields[0] == "base") {
            if (fields.size() != 2) {
                throw ConfigError(where + "expected 'base <offset-seconds>'");
            }
            if (base) {
                throw ConfigError(where + "duplicate base line");
            }
            base = parse_offset_field(fields[1], line_no);
        } else if (fields[0] == "transition") {
            if (fields.size() != 3) {
                throw ConfigError(where + "expected 'transition <instant> <offset-seconds>'");
            }
            const auto parsed = parse_iso8601(fields[1]);
            if (!parsed || parsed->precision != ParsedTimestamp::Precision::second) {
                throw ConfigError(where + "bad transition instant '" + std::string(fields[1]) + "'");
            }
            const std::int64_t at = wall_from_civil(parsed->civil) - parsed->utc_offset.value_or(0);
            transitions.push_back({at, parse_offset_field(fields[2], line_no)});
        } else {
            throw ConfigError(where + "unrecognised directive '" + std::string(fields[0]) + "'");
        }
    }
    if (id.empty()) {
        throw ConfigError("zone file: missing time zone id");
    }
    if (!base) {
        throw ConfigError("zone file: missing base line for '" + id + "'");
    }
    return TimeZone(std::move(id), *base, std::move(transitions));
}

TimeZone load_time_zone(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open zone file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_time_zone(buf.str());
}

void TimeZoneRegistry::add(TimeZone tz)
{
    auto id = tz.id();
    zones_[id] = std::make_shared<const TimeZone>(std::move(tz));
}

void TimeZoneRegistry::load(const std::filesystem::path& path)
{
    add(load_time_zone(path));
}

bool TimeZoneRegistry::contains(std::string_view id) const
{
    return zones_.find(id) != zones_.end() || builtin(id) != nullptr;
}

TimeZoneRef TimeZoneRegistry::get(std::string_view id) const
{
    if (auto it = zones_.find(id); it != zones_.end()) {
        return it->second;
    }
    if (auto tz = builtin(id)) {
        return tz;
    }
    throw ConfigError("unknown time zone '" + std::string(id) + "'");
}

TimeZoneRef TimeZoneRegistry::builtin(std::string_view id)
{
    if (id == "UTC") {
        return utc();
    }
    if (id == "dst-spring") {
        static const auto tz = std::make_shared<const TimeZone>(
            "dst-spring", 0, std::vector<Transition>{{dst_spring_at, 3600}});
        return tz;
    }
    if (id == "dst-fall") {
        static const auto tz = std::make_shared<const TimeZone>(
            "dst-fall", 3600, std::vector<Transition>{{dst_fall_at, 0}});
        return tz;
    }
    constexpr std::string_view prefix = "fixed";
    if (id.size() > prefix.size() && id.substr(0, prefix.size()) == prefix) {
        const std::string_view rest = id.substr(prefix.size());
        const auto parsed = parse_iso8601("1970-01-01T00:00:00" + std::string(rest));
        if (rest.size() == 3 && (rest[0] == '+' || rest[0] == '-')) {
            // fixed+HH
            const auto full = parse_iso8601("1970-01-01T00:00:00" + std::string(rest) + ":00");
            if (full && full->utc_offset) {
                return std::make_shared<const TimeZone>(std::string(id), *full->utc_offset);
            }
        } else if (parsed && parsed->utc_offset && rest != "Z") {
            return std::make_shared<const TimeZone>(std::string(id), *parsed->utc_offset);
        }
    }
    return nullptr;
}

TimeZoneRef utc()
{
    static const auto tz = std::make_shared<const TimeZone>("UTC", 0);
    return tz;
}

} // namespace chronoplot
