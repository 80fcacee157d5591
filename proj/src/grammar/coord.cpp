#include <chronoplot/grammar/coord.hpp>

#include <chronoplot/error.hpp>

#include <algorithm>

namespace chronoplot::grammar {

std::vector<double> loop_landmarks(const CoordConfig& cfg, const ScaleState& st)
{
    std::vector<double> marks;
    if (cfg.time_loops) {
        const Unit u = *cfg.time_loops;
        const TimeZone& cal = st.frame.calendar();
        const std::int64_t first = granule_index(u, Instant{st.frame_lo}, cal);
        const std::int64_t last = granule_index(u, Instant{st.frame_hi}, cal);
        for (std::int64_t i = first; i <= last; ++i) {
            marks.push_back(st.to_scale(static_cast<double>(granule_bounds_seconds(u, i, cal).start)));
        }
        marks.push_back(st.to_scale(static_cast<double>(granule_bounds_seconds(u, last, cal).end)));
    } else if (cfg.loops) {
        for (const TimeLiteral& lit : *cfg.loops) {
            marks.push_back(st.to_scale(st.frame.from_literal(lit)));
        }
    }
    if (marks.size() < 2) {
        throw ConfigError("loops need at least two landmarks");
    }
    for (std::size_t i = 1; i < marks.size(); ++i) {
        if (!(marks[i] > marks[i - 1])) {
            throw ConfigError("loop landmarks must be strictly increasing");
        }
    }
    return marks;
}

std::optional<LoopPosition> loop_transform(double x, std::span<const double> landmarks)
{
    if (landmarks.size() < 2 || x < landmarks.front() || x >= landmarks.back()) {
        return std::nullopt;
    }
    const auto it = std::upper_bound(landmarks.begin(), landmarks.end(), x);
    const auto k = static_cast<std::size_t>(it - landmarks.begin()) - 1;
    return LoopPosition{static_cast<int>(k), x - landmarks[k]};
}

std::vector<Segment> loop_segments(const std::vector<Segment>& segments, std::span<const double> landmarks,
                                   std::size_t* dropped)
{
    std::vector<Segment> out;
    std::size_t lost = 0;
    for (const Segment& s : segments) {
        if (s.x0 == s.x1) {
            if (const auto lp = loop_transform(s.x0, landmarks)) {
                Segment piece = s;
                piece.x0 = piece.x1 = lp->local;
                piece.cycle = lp->cycle;
                out.push_back(piece);
            } else {
                ++lost;
            }
            continue;
        }
        std::vector<double> xs{s.x0};
        const double lo = std::min(s.x0, s.x1);
        const double hi = std::max(s.x0, s.x1);
        std::vector<double> cuts;
        for (double l : landmarks) {
            if (l > lo && l < hi) {
                cuts.push_back(l);
            }
        }
        if (s.x1 < s.x0) {
            std::reverse(cuts.begin(), cuts.end());
        }
        xs.insert(xs.end(), cuts.begin(), cuts.end());
        xs.push_back(s.x1);

        const auto y_at = [&](double x) {
            if (x == s.x0) {
                return s.y0;
            }
            if (x == s.x1) {
                return s.y1;
            }
            return s.y0 + (s.y1 - s.y0) * (x - s.x0) / (s.x1 - s.x0);
        };
        for (std::size_t i = 1; i < xs.size(); ++i) {
            const double u = xs[i - 1];
            const double v = xs[i];
            const auto lp = loop_transform(0.5 * (u + v), landmarks);
            if (!lp) {
                ++lost;
                continue;
            }
            const double base = landmarks[static_cast<std::size_t>(lp->cycle)];
            out.push_back({u - base, y_at(u), v - base, y_at(v), s.style, lp->cycle, s.group});
        }
    }
    if (dropped) {
        *dropped += lost;
    }
    return out;
}

std::vector<double> cycle_lengths(std::span<const double> landmarks)
{
    std::vector<double> out;
    for (std::size_t i = 1; i < landmarks.size(); ++i) {
        out.push_back(landmarks[i] - landmarks[i - 1]);
    }
    return out;
}

Cell calendar_cell(int cycle, int wrap, Direction direction)
{
    if (wrap < 1) {
        throw ConfigError("calendar wrap width must be at least 1");
    }
    const int major = cycle / wrap;
    const int minor = cycle % wrap;
    return direction == Direction::rows ? Cell{major, minor} : Cell{minor, major};
}

} // namespace chronoplot::grammar
