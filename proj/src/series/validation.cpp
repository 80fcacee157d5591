#include <chronoplot/report.hpp>
#include <chronoplot/time_series.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace chronoplot {

ValidationReport check_unique(const TimeSeries& ts)
{
    std::map<std::pair<KeyTuple, std::int64_t>, std::vector<std::size_t>> occurrences;
    const auto& rows = ts.rows();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        occurrences[{rows[i].keys, rows[i].index}].push_back(i);
    }
    ValidationReport report;
    for (auto& [key, where] : occurrences) {
        if (where.size() > 1) {
            report.duplicates.push_back(DuplicateEntry{key.first, key.second, std::move(where)});
        }
    }
    return report;
}

ValidationReport detect_gaps(const TimeSeries& ts)
{
    std::map<KeyTuple, std::set<std::int64_t>> indices;
    for (const Row& r : ts.rows()) {
        indices[r.keys].insert(r.index);
    }
    ValidationReport report;
    for (const auto& [key, set] : indices) {
        std::int64_t previous = *set.begin();
        for (std::int64_t i : set) {
            if (i > previous + 1) {
                report.gaps.push_back(GapEntry{key, IndexRange{previous + 1, i - 1}});
            }
            previous = i;
        }
    }
    return report;
}

ValidationReport validate(const TimeSeries& ts)
{
    ValidationReport report = check_unique(ts);
    report.gaps = detect_gaps(ts).gaps;
    return report;
}

TimeSeries fill_gaps(const TimeSeries& ts)
{
    std::map<KeyTuple, std::vector<Row>> by_key;
    for (const Row& r : ts.rows()) {
        by_key[r.keys].push_back(r);
    }
    std::vector<Row> out;
    out.reserve(ts.size());
    for (const KeyTuple& key : ts.distinct_keys()) {
        auto& rows = by_key[key];
        std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.index < b.index; });
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i > 0) {
                for (std::int64_t missing = rows[i - 1].index + 1; missing < rows[i].index; ++missing) {
                    out.push_back(Row{key, missing, std::vector<std::optional<double>>(ts.measure_names().size()), 0});
                }
            }
            out.push_back(rows[i]);
        }
    }
    return TimeSeries(ts.index_name(), ts.unit(), ts.tz(), ts.key_names(), ts.measure_names(), std::move(out));
}

namespace {

std::string key_label(const TimeSeries& ts, const KeyTuple& key)
{
    if (key.empty()) {
        return "(no key)";
    }
    std::string out;
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += ts.key_names()[i] + "=" + key[i];
    }
    return out;
}

} // namespace

nlohmann::json report_to_json(const ValidationReport& report, const TimeSeries& ts)
{
    nlohmann::json out;
    out["valid"] = report.is_valid();
    out["granularity"] = std::string(unit_name(ts.unit()));
    out["tz"] = ts.tz()->id();

    auto duplicates = nlohmann::json::array();
    for (const auto& d : report.duplicates) {
        nlohmann::json entry;
        entry["key"] = d.key;
        entry["index"] = format_index(ts.unit(), d.index, *ts.tz());
        entry["index_value"] = d.index;
        auto rows = nlohmann::json::array();
        auto lines = nlohmann::json::array();
        for (std::size_t r : d.rows) {
            rows.push_back(r + 1);
            lines.push_back(ts.rows()[r].line);
        }
        entry["rows"] = rows;
        entry["lines"] = lines;
        duplicates.push_back(std::move(entry));
    }
    out["duplicates"] = std::move(duplicates);

    auto gaps = nlohmann::json::array();
    for (const auto& g : report.gaps) {
        nlohmann::json entry;
        entry["key"] = g.key;
        entry["from"] = format_index(ts.unit(), g.missing.first, *ts.tz());
        entry["to"] = format_index(ts.unit(), g.missing.last, *ts.tz());
        entry["first_index"] = g.missing.first;
        entry["last_index"] = g.missing.last;
        entry["count"] = g.missing.size();
        gaps.push_back(std::move(entry));
    }
    out["gaps"] = std::move(gaps);
    return out;
}

std::string report_to_text(const ValidationReport& report, const TimeSeries& ts)
{
    std::ostringstream out;
    for (const auto& d : report.duplicates) {
        out << "duplicate: " << key_label(ts, d.key) << " has " << d.rows.size() << " observations at "
            << format_index(ts.unit(), d.index, *ts.tz()) << " (rows";
        for (std::size_t r : d.rows) {
            out << ' ' << r + 1;
        }
        out << ")\n";
    }
    for (const auto& g : report.gaps) {
        out << "gap: " << key_label(ts, g.key) << " is missing " << g.missing.size() << ' '
            << unit_name(ts.unit()) << (g.missing.size() == 1 ? "" : "s") << " from "
            << format_index(ts.unit(), g.missing.first, *ts.tz()) << " to "
            << format_index(ts.unit(), g.missing.last, *ts.tz()) << '\n';
    }
    return out.str();
}

} // namespace chronoplot
