#include <chronoplot/grammar/scale.hpp>

#include <chronoplot/error.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace chronoplot::grammar {

const TimeZone& Frame::calendar() const
{
    if (mode == PositionMode::civil || !reference) {
        return *utc();
    }
    return *reference;
}

double Frame::from_instant(Instant t) const
{
    if (mode == PositionMode::civil && reference) {
        return reference->to_civil(t).wall.seconds;
    }
    return t.seconds;
}

double Frame::from_literal(const TimeLiteral& lit) const
{
    if (const auto* seconds = std::get_if<double>(&lit.value)) {
        return *seconds;
    }
    const auto& parsed = std::get<ParsedTimestamp>(lit.value);
    const std::int64_t wall = wall_from_civil(parsed.civil);
    if (parsed.utc_offset) {
        return from_instant(Instant{static_cast<double>(wall - *parsed.utc_offset)});
    }
    if (mode == PositionMode::civil) {
        return static_cast<double>(wall);
    }
    return static_cast<double>(calendar().resolve_wall(wall));
}

CivilDateTime Frame::to_civil(double v) const
{
    const auto whole = static_cast<std::int64_t>(std::floor(v));
    if (mode == PositionMode::civil) {
        return civil_from_wall(whole);
    }
    return civil_from_wall(whole + calendar().offset_at(whole));
}

Warp::Warp(std::vector<double> landmarks)
    : landmarks_(std::move(landmarks))
{
    if (landmarks_.size() < 2) {
        throw ConfigError("time warping needs at least two landmarks");
    }
    for (std::size_t i = 1; i < landmarks_.size(); ++i) {
        if (!(landmarks_[i] > landmarks_[i - 1])) {
            throw ConfigError("warp landmarks must be strictly increasing");
        }
    }
}

double Warp::operator()(double t) const
{
    const std::size_t n = landmarks_.size() - 1;
    std::size_t k = 0;
    if (t >= landmarks_[n]) {
        k = n - 1;
    } else if (t > landmarks_[0]) {
        k = static_cast<std::size_t>(std::upper_bound(landmarks_.begin(), landmarks_.end(), t) - landmarks_.begin()) - 1;
    }
    return static_cast<double>(k) + (t - landmarks_[k]) / (landmarks_[k + 1] - landmarks_[k]);
}

double Warp::inverse(double u) const
{
    const auto n = static_cast<double>(landmarks_.size() - 1);
    const double k = std::clamp(std::floor(u), 0.0, n - 1.0);
    const auto i = static_cast<std::size_t>(k);
    return landmarks_[i] + (u - k) * (landmarks_[i + 1] - landmarks_[i]);
}

double warp(double t, std::span<const double> landmarks)
{
    if (landmarks.empty()) {
        return t;
    }
    return Warp(std::vector<double>(landmarks.begin(), landmarks.end()))(t);
}

double frame_position(const TimePoint& tp, double align, const Frame& frame)
{
    const Instant t = to_continuous(tp, align);
    if (frame.mode == PositionMode::civil) {
        const TimeZone& tz = tp.tz ? *tp.tz : *utc();
        return t.seconds + static_cast<double>(tz.offset_at(t));
    }
    return t.seconds;
}

double map_position(const TimePoint& tp, const ScaleState& st, double align)
{
    return st.to_scale(frame_position(tp, align, st.frame));
}

ScaleState train_scale(const std::vector<ScaleLayer>& layers, const ScaleTimeConfig& cfg, const Frame& frame)
{
    ScaleState st;
    st.frame = frame;
    st.align = cfg.align_mixed;

    bool first = true;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const TimePoint* sample = nullptr;
    for (const ScaleLayer& layer : layers) {
        st.common = first ? layer.unit : glb_granularity(st.common, layer.unit);
        first = false;
        for (std::size_t i = 0; i < layer.points.size(); ++i) {
            const double shift = layer.offsets.empty() ? 0.0 : layer.offsets[i];
            const TimePoint& tp = layer.points[i];
            sample = sample ? sample : &tp;
            const double x = frame_position(tp, cfg.align_mixed, frame) + shift;
            lo = std::min(lo, x);
            hi = std::max(hi, x);
            if (layer.include_extent) {
                lo = std::min(lo, frame_position(tp, 0.0, frame) + shift);
                hi = std::max(hi, frame_position(tp, 1.0, frame) + shift);
            }
        }
    }
    if (!sample) {
        throw ScaleError("the time scale has no observations to train on");
    }
    if (!(hi > lo)) {
        // A single instant: show its whole granule.
        const double a = frame_position(*sample, 0.0, frame);
        const double b = frame_position(*sample, 1.0, frame);
        lo = std::min(lo, a);
        hi = std::max(hi, b);
    }
    st.frame_lo = lo;
    st.frame_hi = hi;

    if (cfg.warps) {
        std::vector<double> marks;
        for (const auto& lit : *cfg.warps) {
            marks.push_back(frame.from_literal(lit));
        }
        st.warp.emplace(std::move(marks));
    } else if (cfg.time_warps) {
        const Unit u = *cfg.time_warps;
        const TimeZone& cal = frame.calendar();
        const std::int64_t first_idx = granule_index(u, Instant{lo}, cal);
        const std::int64_t last_idx = granule_index(u, Instant{hi}, cal);
        std::vector<double> marks;
        for (std::int64_t i = first_idx; i <= last_idx; ++i) {
            marks.push_back(static_cast<double>(granule_bounds_seconds(u, i, cal).start));
        }
        marks.push_back(static_cast<double>(granule_bounds_seconds(u, last_idx, cal).end));
        st.warp.emplace(std::move(marks));
        st.warp_unit = u;
    }
    st.breaks = compute_breaks(lo, hi, st.common, cfg.breaks.value_or(6), frame);
    return st;
}

namespace {

struct Candidate
{
    Unit unit;
    int step;
    double approx_seconds;
};

const std::vector<Candidate>& candidates()
{
    static const std::vector<Candidate> list = [] {
        std::vector<Candidate> c;
        const double year = 365.2425 * 86400;
        for (int s : {1000, 500, 200, 100, 50, 20, 10, 5, 2, 1}) {
            c.push_back({Unit::year, s, year * s});
        }
        c.push_back({Unit::month, 3, year / 4});
        c.push_back({Unit::month, 1, year / 12});
        c.push_back({Unit::week, 1, 7 * 86400.0});
        c.push_back({Unit::day, 1, 86400.0});
        for (int s : {12, 6, 3, 1}) {
            c.push_back({Unit::hour, s, 3600.0 * s});
        }
        for (int s : {30, 15, 5, 1}) {
            c.push_back({Unit::minute, s, 60.0 * s});
        }
        for (int s : {30, 15, 5, 1}) {
            c.push_back({Unit::second, s, 1.0 * s});
        }
        return c;
    }();
    return list;
}

bool aligned(Unit unit, std::int64_t index, int step, const TimeZone& cal)
{
    if (step == 1) {
        return true;
    }
    const TimePoint tp{unit, index, nullptr};
    switch (unit) {
    case Unit::year: return floor_mod(1970 + index, step) == 0;
    case Unit::month: return floor_mod(index, step) == 0;
    case Unit::hour: {
        const std::int64_t wall = index * 3600 + cal.offset_at(index * 3600);
        return floor_mod(floor_div(wall, 3600), step) == 0;
    }
    case Unit::minute: {
        const std::int64_t wall = index * 60 + cal.offset_at(index * 60);
        return floor_mod(floor_div(wall, 60), step) == 0;
    }
    case Unit::second: return floor_mod(index + cal.offset_at(index), step) == 0;
    default: (void)tp; return true;
    }
}

std::vector<double> enumerate_ticks(double lo, double hi, Unit unit, int step, const TimeZone& cal)
{
    std::vector<double> out;
    const std::int64_t first = granule_index(unit, Instant{lo}, cal);
    const std::int64_t last = granule_index(unit, Instant{hi}, cal);
    for (std::int64_t i = first; i <= last; ++i) {
        const auto start = static_cast<double>(granule_bounds_seconds(unit, i, cal).start);
        if (start >= lo && start <= hi && aligned(unit, i, step, cal)) {
            out.push_back(start);
        }
    }
    return out;
}

} // namespace

std::string format_tick(double frame_value, Unit unit, const Frame& frame)
{
    const CivilDateTime c = frame.to_civil(frame_value);
    char buf[48];
    switch (unit) {
    case Unit::year:
        std::snprintf(buf, sizeof(buf), "%04lld", static_cast<long long>(c.date.year));
        break;
    case Unit::month:
        std::snprintf(buf, sizeof(buf), "%04lld-%02d", static_cast<long long>(c.date.year), c.date.month);
        break;
    case Unit::week:
    case Unit::day:
        std::snprintf(buf, sizeof(buf), "%02d-%02d", c.date.month, c.date.day);
        break;
    case Unit::hour:
    case Unit::minute:
        if (c.hour == 0 && c.minute == 0) {
            std::snprintf(buf, sizeof(buf), "%02d-%02d", c.date.month, c.date.day);
        } else {
            std::snprintf(buf, sizeof(buf), "%02d:%02d", c.hour, c.minute);
        }
        break;
    case Unit::second:
        std::snprintf(buf, sizeof(buf), "%02d:%02d:%02d", c.hour, c.minute, c.second);
        break;
    }
    return buf;
}

Breaks compute_breaks(double lo, double hi, Unit floor, int target, const Frame& frame)
{
    Breaks out;
    if (!(hi > lo) || target < 1) {
        return out;
    }
    const TimeZone& cal = frame.calendar();
    const double min_count = std::ceil(target / 2.0);
    const double max_count = 2.0 * target;

    const Candidate* chosen = nullptr;
    const Candidate* closest = nullptr;
    double closest_distance = std::numeric_limits<double>::infinity();
    for (const Candidate& c : candidates()) {
        if (!refines(floor, c.unit)) {
            continue;
        }
        const double estimate = (hi - lo) / c.approx_seconds;
        const double count = estimate > 50.0 * target
            ? estimate
            : static_cast<double>(enumerate_ticks(lo, hi, c.unit, c.step, cal).size());
        if (count >= min_count && count <= max_count) {
            chosen = &c;
            break;
        }
        if (count > 0) {
            const double distance = std::abs(std::log(count / target));
            if (distance < closest_distance) {
                closest_distance = distance;
                closest = &c;
            }
        }
    }
    if (!chosen) {
        chosen = closest;
    }
    if (!chosen) {
        return out;
    }
    out.unit = chosen->unit;
    out.step = chosen->step;
    out.positions = enumerate_ticks(lo, hi, chosen->unit, chosen->step, cal);
    for (double p : out.positions) {
        out.labels.push_back(format_tick(p, chosen->unit, frame));
    }
    return out;
}

std::vector<double> linear_breaks(double lo, double hi, int target)
{
    std::vector<double> out;
    if (!(hi > lo) || target < 1) {
        return out;
    }
    const double raw = (hi - lo) / target;
    const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
    double step = magnitude;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        step = m * magnitude;
        if (step >= raw) {
            break;
        }
    }
    const double first = std::ceil(lo / step - 1e-9);
    for (double k = first; k * step <= hi + step * 1e-9; k += 1.0) {
        const double v = k * step;
        out.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
    }
    return out;
}

std::string format_number(double v, double step)
{
    int decimals = 0;
    if (step > 0 && step < 1) {
        decimals = static_cast<int>(std::ceil(-std::log10(step) - 1e-9));
        // 2.5, 0.25 and friends need one more digit.
        const double scaled = step * std::pow(10.0, decimals);
        if (std::abs(scaled - std::round(scaled)) > 1e-9) {
            ++decimals;
        }
    } else if (step >= 1 && std::abs(step - std::round(step)) > 1e-9) {
        decimals = 1;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    std::string s = buf;
    if (s.size() > 1 && s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, 1);
    }
    return s;
}

} // namespace chronoplot::grammar
