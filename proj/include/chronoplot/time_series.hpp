#pragma once

#include <chronoplot/granularity.hpp>
#include <chronoplot/time_zone.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace chronoplot {

using KeyTuple = std::vector<std::string>;

struct Row
{
    KeyTuple keys;
    std::int64_t index = 0;
    std::vector<std::optional<double>> measures;
    std::size_t line = 0; // source line, 0 when not loaded from a file
};

// Keyed table of observations over a single linear granularity and zone.
// Immutable after construction.
class TimeSeries
{
public:
    // Throws ArgumentError when a row's shape does not match the column lists
    // or there are no measure columns.
    TimeSeries(std::string index_name, Unit unit, TimeZoneRef tz,
               std::vector<std::string> key_names, std::vector<std::string> measure_names,
               std::vector<Row> rows);

    const std::string& index_name() const noexcept { return index_name_; }
    Unit unit() const noexcept { return unit_; }
    const TimeZoneRef& tz() const noexcept { return tz_; }
    const std::vector<std::string>& key_names() const noexcept { return key_names_; }
    const std::vector<std::string>& measure_names() const noexcept { return measure_names_; }
    const std::vector<Row>& rows() const noexcept { return rows_; }
    std::size_t size() const noexcept { return rows_.size(); }

    TimePoint time_point(std::size_t row) const { return TimePoint{unit_, rows_[row].index, tz_}; }

    // Column position or nullopt.
    std::optional<std::size_t> measure_column(std::string_view name) const;
    std::optional<std::size_t> key_column(std::string_view name) const;

    // Distinct key tuples in order of first appearance.
    std::vector<KeyTuple> distinct_keys() const;

private:
    std::string index_name_;
    Unit unit_;
    TimeZoneRef tz_;
    std::vector<std::string> key_names_;
    std::vector<std::string> measure_names_;
    std::vector<Row> rows_;
};

struct DuplicateEntry
{
    KeyTuple key;
    std::int64_t index;
    std::vector<std::size_t> rows; // 0-based row positions
};

struct GapEntry
{
    KeyTuple key;
    IndexRange missing;
};

struct ValidationReport
{
    std::vector<DuplicateEntry> duplicates;
    std::vector<GapEntry> gaps;

    bool is_valid() const noexcept { return duplicates.empty() && gaps.empty(); }
};

// Every (key, index) occurring more than once, ordered by key then index.
ValidationReport check_unique(const TimeSeries& ts);

// Maximal runs of missing indices strictly inside each key's [min, max].
ValidationReport detect_gaps(const TimeSeries& ts);

// Both checks combined.
ValidationReport validate(const TimeSeries& ts);

// Inserts null-measure rows for every gap. Output rows are grouped by key in
// first-appearance order, ascending index within a key.
TimeSeries fill_gaps(const TimeSeries& ts);

enum class Stat { mean, sum, min, max, first, last };

Stat parse_stat(std::string_view name);

// One row per (key, coarser granule) holding at least one input row. Nulls are
// skipped; a group with only nulls yields a null. first/last follow time order.
// Throws IncompatibleGranularity unless the input unit refines `coarser`.
TimeSeries aggregate(const TimeSeries& ts, Unit coarser, Stat stat);

// Human-readable form of a granule: `YYYY`, `YYYY-MM`, `YYYY-MM-DD` (weeks use
// their Monday), or `YYYY-MM-DDTHH:MM:SS+HH:MM` for sub-day units.
std::string format_index(Unit unit, std::int64_t index, const TimeZone& tz);

// Parses one index cell. `warning` receives a note when a local reading is
// ambiguous and the earlier instant was chosen. Returns nullopt on failure.
std::optional<std::int64_t> parse_index(std::string_view text, Unit unit, const TimeZone& tz,
                                        std::string* warning = nullptr, std::string* error = nullptr);

struct SeriesSchema
{
    std::string index;             // empty: first column
    Unit granularity = Unit::day;
    std::string tz = "UTC";
    std::vector<std::string> keys;
    std::vector<std::string> measures; // empty: every remaining column
};

struct CsvResult
{
    TimeSeries series;
    std::vector<std::string> warnings;
};

CsvResult parse_csv(std::string_view text, const SeriesSchema& schema, const TimeZoneRegistry& zones);
CsvResult read_csv(const std::filesystem::path& path, const SeriesSchema& schema,
                   const TimeZoneRegistry& zones);

void write_csv(std::ostream& out, const TimeSeries& ts);
std::string format_measure(double value);

} // namespace chronoplot
