#include <chronoplot/grammar/breaks.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

namespace chronoplot::grammar {

std::string_view weekday_name(int monday_based)
{
    static constexpr std::array<std::string_view, 7> names{"Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};
    return names.at(static_cast<std::size_t>(floor_mod(monday_based, 7)));
}

std::string_view month_name(int month)
{
    static constexpr std::array<std::string_view, 12> names{"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                            "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
    return names.at(static_cast<std::size_t>(month - 1));
}

Axis time_axis(const ScaleState& st)
{
    Axis axis;
    axis.lo = st.domain_lo();
    axis.hi = st.domain_hi();
    for (std::size_t i = 0; i < st.breaks.positions.size(); ++i) {
        axis.ticks.push_back(st.to_scale(st.breaks.positions[i]));
        axis.labels.push_back(st.breaks.labels[i]);
    }
    return axis;
}

namespace {

struct SubTicks
{
    Unit sub;
    int every;
};

std::optional<SubTicks> sub_ticks_for(Unit loop)
{
    switch (loop) {
    case Unit::year: return SubTicks{Unit::month, 1};
    case Unit::month: return SubTicks{Unit::day, 7};
    case Unit::week: return SubTicks{Unit::day, 1};
    case Unit::day: return SubTicks{Unit::hour, 6};
    case Unit::hour: return SubTicks{Unit::minute, 15};
    case Unit::minute: return SubTicks{Unit::second, 15};
    case Unit::second: return std::nullopt;
    }
    return std::nullopt;
}

// Whether a sub-granule starting at this civil reading gets a tick.
bool keep_tick(Unit loop, const CivilDateTime& c, int every)
{
    switch (loop) {
    case Unit::month: return (c.date.day - 1) % every == 0;
    case Unit::day: return c.hour % every == 0;
    case Unit::hour: return c.minute % every == 0;
    case Unit::minute: return c.second % every == 0;
    default: return true;
    }
}

std::string tick_label(Unit loop, const CivilDateTime& c)
{
    char buf[16];
    switch (loop) {
    case Unit::year: return std::string(month_name(c.date.month));
    case Unit::month: std::snprintf(buf, sizeof(buf), "%d", c.date.day); break;
    case Unit::week: return std::string(weekday_name(static_cast<int>(weekday_from_days(days_from_civil(c.date)))));
    case Unit::day: std::snprintf(buf, sizeof(buf), "%02d:00", c.hour); break;
    case Unit::hour: std::snprintf(buf, sizeof(buf), ":%02d", c.minute); break;
    default: std::snprintf(buf, sizeof(buf), ":%02d", c.second); break;
    }
    return buf;
}

void elapsed_ticks(Axis& axis, const ScaleState& st)
{
    if (st.warp) {
        const auto ticks = linear_breaks(0.0, axis.hi, 5);
        const double step = ticks.size() > 1 ? ticks[1] - ticks[0] : 1.0;
        for (double t : ticks) {
            axis.ticks.push_back(t);
            axis.labels.push_back(format_number(t, step));
        }
        return;
    }
    struct Scale
    {
        double seconds;
        const char* suffix;
    };
    Scale unit{1.0, "s"};
    for (const Scale s : {Scale{86400.0, "d"}, Scale{3600.0, "h"}, Scale{60.0, "min"}}) {
        if (axis.hi >= 2 * s.seconds) {
            unit = s;
            break;
        }
    }
    const auto ticks = linear_breaks(0.0, axis.hi / unit.seconds, 5);
    const double step = ticks.size() > 1 ? ticks[1] - ticks[0] : 1.0;
    for (double t : ticks) {
        axis.ticks.push_back(t * unit.seconds);
        axis.labels.push_back(format_number(t, step) + unit.suffix);
    }
}

} // namespace

Axis loop_axis(const CoordConfig& cfg, const ScaleState& st, std::span<const double> landmarks)
{
    Axis axis;
    axis.lo = 0.0;
    std::size_t longest = 0;
    for (std::size_t k = 1; k + 1 < landmarks.size(); ++k) {
        if (landmarks[k + 1] - landmarks[k] > landmarks[longest + 1] - landmarks[longest]) {
            longest = k;
        }
    }
    axis.hi = landmarks[longest + 1] - landmarks[longest];

    if (cfg.time_loops && st.warp_unit == cfg.time_loops) {
        for (int q = 0; q < 4; ++q) {
            axis.ticks.push_back(axis.hi * q / 4.0);
            axis.labels.push_back(std::to_string(q * 25) + "%");
        }
    } else if (const auto sub = cfg.time_loops ? sub_ticks_for(*cfg.time_loops) : std::nullopt) {
        const Unit loop = *cfg.time_loops;
        const TimeZone& cal = st.frame.calendar();
        const double base = landmarks[longest];
        const double frame_start = st.warp ? st.warp->inverse(base) : base;
        const double frame_end = st.warp ? st.warp->inverse(landmarks[longest + 1]) : landmarks[longest + 1];
        const auto first = granule_index(sub->sub, std::llround(frame_start), cal);
        const auto last = granule_index(sub->sub, std::llround(frame_end) - 1, cal);
        for (std::int64_t i = first; i <= last; ++i) {
            const auto start = static_cast<double>(granule_bounds_seconds(sub->sub, i, cal).start);
            const CivilDateTime c = st.frame.to_civil(start);
            const double local = st.to_scale(start) - base;
            if (local < -1e-9 || local >= axis.hi || !keep_tick(loop, c, sub->every)) {
                continue;
            }
            axis.ticks.push_back(std::max(local, 0.0));
            axis.labels.push_back(tick_label(loop, c));
        }
    } else {
        elapsed_ticks(axis, st);
    }
    // Ticks are half-open: a tick at the cycle end would coincide with 0 on
    // a polar axis.
    while (!axis.ticks.empty() && axis.ticks.back() >= axis.hi) {
        axis.ticks.pop_back();
        axis.labels.pop_back();
    }
    return axis;
}

Axis value_axis(double lo, double hi, bool include_zero)
{
    if (include_zero) {
        lo = std::min(lo, 0.0);
        hi = std::max(hi, 0.0);
    }
    if (!(hi > lo)) {
        const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.5;
        lo -= pad;
        hi += pad;
    }
    Axis axis;
    const double pad = 0.05 * (hi - lo);
    axis.lo = (include_zero && lo == 0.0) ? 0.0 : lo - pad;
    axis.hi = (include_zero && hi == 0.0) ? 0.0 : hi + pad;
    axis.ticks = linear_breaks(axis.lo, axis.hi, 5);
    const double step = axis.ticks.size() > 1 ? axis.ticks[1] - axis.ticks[0] : 1.0;
    for (double t : axis.ticks) {
        axis.labels.push_back(format_number(t, step));
    }
    return axis;
}

} // namespace chronoplot::grammar
