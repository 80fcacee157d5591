#include <chronoplot/civil.hpp>

#include <charconv>
#include <cstdio>
#include <cstdlib>

namespace chronoplot {

IsoWeek iso_week_from_days(std::int64_t z)
{
    const std::int64_t thursday = z - weekday_from_days(z) + 3;
    const CivilDate t = civil_from_days(thursday);
    return IsoWeek{t.year, day_of_year(t) / 7};
}

namespace {

// Reads exactly `width` digits starting at `pos`.
bool read_fixed(std::string_view s, std::size_t pos, std::size_t width, int& out)
{
    if (pos + width > s.size()) {
        return false;
    }
    int value = 0;
    for (std::size_t i = pos; i < pos + width; ++i) {
        if (s[i] < '0' || s[i] > '9') {
            return false;
        }
        value = value * 10 + (s[i] - '0');
    }
    out = value;
    return true;
}

} // namespace

std::optional<ParsedTimestamp> parse_iso8601(std::string_view s)
{
    ParsedTimestamp out;
    int year = 0;
    if (!read_fixed(s, 0, 4, year)) {
        return std::nullopt;
    }
    out.civil.date.year = year;
    out.precision = ParsedTimestamp::Precision::year;
    std::size_t pos = 4;

    if (pos < s.size() && s[pos] == '-') {
        int month = 0;
        if (!read_fixed(s, pos + 1, 2, month) || month < 1 || month > 12) {
            return std::nullopt;
        }
        out.civil.date.month = month;
        out.precision = ParsedTimestamp::Precision::month;
        pos += 3;

        if (pos < s.size() && s[pos] == '-') {
            int day = 0;
            if (!read_fixed(s, pos + 1, 2, day) || day < 1 || day > days_in_month(year, month)) {
                return std::nullopt;
            }
            out.civil.date.day = day;
            out.precision = ParsedTimestamp::Precision::day;
            pos += 3;

            if (pos < s.size() && (s[pos] == 'T' || s[pos] == ' ')) {
                int h = 0, m = 0, sec = 0;
                if (!read_fixed(s, pos + 1, 2, h) || pos + 3 >= s.size() || s[pos + 3] != ':'
                    || !read_fixed(s, pos + 4, 2, m) || pos + 6 >= s.size() || s[pos + 6] != ':'
                    || !read_fixed(s, pos + 7, 2, sec)) {
                    return std::nullopt;
                }
                if (h > 23 || m > 59 || sec > 59) {
                    return std::nullopt;
                }
                out.civil.hour = h;
                out.civil.minute = m;
                out.civil.second = sec;
                out.precision = ParsedTimestamp::Precision::second;
                pos += 9;

                if (pos < s.size() && s[pos] == 'Z') {
                    out.utc_offset = 0;
                    pos += 1;
                } else if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
                    int oh = 0, om = 0;
                    if (!read_fixed(s, pos + 1, 2, oh) || pos + 3 >= s.size() || s[pos + 3] != ':'
                        || !read_fixed(s, pos + 4, 2, om) || om > 59) {
                        return std::nullopt;
                    }
                    const std::int64_t magnitude = oh * 3600 + om * 60;
                    out.utc_offset = s[pos] == '-' ? -magnitude : magnitude;
                    pos += 6;
                }
            }
        }
    }
    if (pos != s.size()) {
        return std::nullopt;
    }
    return out;
}

std::string format_date(const CivilDate& d)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04lld-%02d-%02d", static_cast<long long>(d.year), d.month, d.day);
    return buf;
}

std::string format_datetime(const CivilDateTime& c)
{
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%04lld-%02d-%02dT%02d:%02d:%02d",
                  static_cast<long long>(c.date.year), c.date.month, c.date.day,
                  c.hour, c.minute, c.second);
    return buf;
}

std::string format_offset(std::int64_t offset)
{
    const char sign = offset < 0 ? '-' : '+';
    const std::int64_t magnitude = std::llabs(offset);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%c%02lld:%02lld", sign,
                  static_cast<long long>(magnitude / 3600),
                  static_cast<long long>(magnitude / 60 % 60));
    return buf;
}

} // namespace chronoplot
