#include <chronoplot/error.hpp>
#include <chronoplot/time_series.hpp>

#include <algorithm>
#include <limits>
#include <map>

namespace chronoplot {

Stat parse_stat(std::string_view name)
{
    if (name == "mean") return Stat::mean;
    if (name == "sum") return Stat::sum;
    if (name == "min") return Stat::min;
    if (name == "max") return Stat::max;
    if (name == "first") return Stat::first;
    if (name == "last") return Stat::last;
    throw ArgumentError("unknown statistic '" + std::string(name) + "'");
}

namespace {

std::optional<double> summarise(const std::vector<double>& values, Stat stat)
{
    if (values.empty()) {
        return std::nullopt;
    }
    switch (stat) {
    case Stat::mean: {
        double total = 0.0;
        for (double v : values) {
            total += v;
        }
        return total / static_cast<double>(values.size());
    }
    case Stat::sum: {
        double total = 0.0;
        for (double v : values) {
            total += v;
        }
        return total;
    }
    case Stat::min: return *std::min_element(values.begin(), values.end());
    case Stat::max: return *std::max_element(values.begin(), values.end());
    case Stat::first: return values.front();
    case Stat::last: return values.back();
    }
    return std::nullopt;
}

} // namespace

TimeSeries aggregate(const TimeSeries& ts, Unit coarser, Stat stat)
{
    if (!refines(ts.unit(), coarser)) {
        throw IncompatibleGranularity("cannot aggregate " + std::string(unit_name(ts.unit())) + " granules into "
                                      + std::string(unit_name(coarser)) + " granules");
    }
    const TimeZone& tz = *ts.tz();

    // Member rows per (key, coarse index), in time order then input order.
    std::map<KeyTuple, std::map<std::int64_t, std::vector<std::size_t>>> groups;
    std::vector<std::size_t> order(ts.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return ts.rows()[a].index < ts.rows()[b].index; });
    for (std::size_t i : order) {
        const Row& r = ts.rows()[i];
        const std::int64_t start = granule_bounds_seconds(ts.unit(), r.index, tz).start;
        groups[r.keys][granule_index(coarser, start, tz)].push_back(i);
    }

    std::vector<Row> out;
    for (const KeyTuple& key : ts.distinct_keys()) {
        for (const auto& [coarse, members] : groups[key]) {
            Row row{key, coarse, {}, 0};
            for (std::size_t m = 0; m < ts.measure_names().size(); ++m) {
                std::vector<double> values;
                for (std::size_t i : members) {
                    if (const auto& v = ts.rows()[i].measures[m]) {
                        values.push_back(*v);
                    }
                }
                row.measures.push_back(summarise(values, stat));
            }
            out.push_back(std::move(row));
        }
    }
    return TimeSeries(ts.index_name(), coarser, ts.tz(), ts.key_names(), ts.measure_names(), std::move(out));
}

} // namespace chronoplot
