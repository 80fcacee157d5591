#include <chronoplot/grammar/position.hpp>

namespace chronoplot::grammar {

std::vector<MappedPoint> position_time(const std::vector<TimedValue>& values, const ScaleState& st)
{
    const bool civil = st.frame.mode == PositionMode::civil;
    const std::int64_t reference_base = st.frame.reference ? st.frame.reference->base_offset() : 0;

    std::vector<MappedPoint> out;
    out.reserve(values.size());
    for (const TimedValue& v : values) {
        MappedPoint p;
        p.absolute_t = to_continuous(v.tp, st.align);
        p.frame_x = frame_position(v.tp, st.align, st.frame) + v.extra_offset;
        p.x = st.to_scale(p.frame_x);
        p.y = v.y;
        p.group = v.group;
        p.x_offset = v.extra_offset;
        if (civil) {
            const TimeZone& tz = v.tp.tz ? *v.tp.tz : *utc();
            p.x_offset += static_cast<double>(tz.offset_at(p.absolute_t) - reference_base);
        }
        out.push_back(p);
    }
    return out;
}

} // namespace chronoplot::grammar
