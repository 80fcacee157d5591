#include <chronoplot/error.hpp>
#include <chronoplot/time_series.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace chronoplot {

namespace {

// Splits one record. Double quotes may wrap a field; "" inside quotes is a
// literal quote. Embedded newlines are not supported.
std::vector<std::string> split_record(std::string_view line, std::size_t line_no)
{
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty() && !was_quoted) {
            quoted = true;
            was_quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            was_quoted = false;
        } else {
            field += c;
        }
    }
    if (quoted) {
        throw IngestionError(line_no, "unterminated quoted field");
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::optional<double> parse_measure(std::string_view raw, std::size_t line_no, const std::string& column)
{
    const std::string_view s = trim(raw);
    if (s.empty() || s == "NA") {
        return std::nullopt;
    }
    double value = 0.0;
    const char* begin = s.data();
    if (!s.empty() && s.front() == '+') {
        ++begin;
    }
    auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
        throw IngestionError(line_no, "column '" + column + "': cannot parse '" + std::string(s) + "' as a number");
    }
    return value;
}

std::size_t require_column(const std::vector<std::string>& header, const std::string& name)
{
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        throw SchemaError("declared column '" + name + "' is missing from the header");
    }
    return static_cast<std::size_t>(it - header.begin());
}

} // namespace

CsvResult parse_csv(std::string_view text, const SeriesSchema& schema, const TimeZoneRegistry& zones)
{
    const TimeZoneRef tz = zones.get(schema.tz);

    std::vector<std::string> warnings;
    std::vector<std::string> header;
    std::size_t index_col = 0;
    std::vector<std::size_t> key_cols;
    std::vector<std::size_t> measure_cols;
    std::vector<std::string> measure_names;
    std::vector<Row> rows;

    // Skip a UTF-8 byte order mark.
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") {
        text.remove_prefix(3);
    }

    std::size_t pos = 0;
    std::size_t line_no = 0;
    bool have_header = false;
    while (pos < text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (trim(line).empty()) {
            continue;
        }
        auto fields = split_record(line, line_no);
        for (auto& f : fields) {
            f = std::string(trim(f));
        }

        if (!have_header) {
            header = std::move(fields);
            have_header = true;
            index_col = schema.index.empty() ? 0 : require_column(header, schema.index);
            for (const auto& k : schema.keys) {
                key_cols.push_back(require_column(header, k));
            }
            if (schema.measures.empty()) {
                for (std::size_t c = 0; c < header.size(); ++c) {
                    if (c != index_col && std::find(key_cols.begin(), key_cols.end(), c) == key_cols.end()) {
                        measure_cols.push_back(c);
                        measure_names.push_back(header[c]);
                    }
                }
            } else {
                for (const auto& m : schema.measures) {
                    measure_cols.push_back(require_column(header, m));
                    measure_names.push_back(m);
                }
            }
            if (measure_cols.empty()) {
                throw SchemaError("no measure columns in the header");
            }
            continue;
        }

        if (fields.size() != header.size()) {
            throw IngestionError(line_no, "expected " + std::to_string(header.size()) + " fields, found "
                                              + std::to_string(fields.size()));
        }
        std::string warning;
        std::string error;
        const auto index = parse_index(fields[index_col], schema.granularity, *tz, &warning, &error);
        if (!index) {
            throw IngestionError(line_no, "column '" + header[index_col] + "': " + error);
        }
        if (!warning.empty()) {
            warnings.push_back("line " + std::to_string(line_no) + ": " + warning);
        }
        Row row;
        row.index = *index;
        row.line = line_no;
        for (std::size_t c : key_cols) {
            row.keys.push_back(fields[c]);
        }
        for (std::size_t m = 0; m < measure_cols.size(); ++m) {
            row.measures.push_back(parse_measure(fields[measure_cols[m]], line_no, measure_names[m]));
        }
        rows.push_back(std::move(row));
    }
    if (!have_header) {
        throw SchemaError("input has no header row");
    }
    const std::string index_name = header[index_col];
    return CsvResult{TimeSeries(index_name, schema.granularity, tz, schema.keys, std::move(measure_names), std::move(rows)),
                     std::move(warnings)};
}

CsvResult read_csv(const std::filesystem::path& path, const SeriesSchema& schema, const TimeZoneRegistry& zones)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IngestionError(0, "cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), schema, zones);
}

std::string format_measure(double value)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

namespace {

std::string quote_if_needed(const std::string& s)
{
    if (s.find_first_of(",\"") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

} // namespace

void write_csv(std::ostream& out, const TimeSeries& ts)
{
    out << quote_if_needed(ts.index_name());
    for (const auto& k : ts.key_names()) {
        out << ',' << quote_if_needed(k);
    }
    for (const auto& m : ts.measure_names()) {
        out << ',' << quote_if_needed(m);
    }
    out << '\n';
    for (const Row& r : ts.rows()) {
        out << format_index(ts.unit(), r.index, *ts.tz());
        for (const auto& k : r.keys) {
            out << ',' << quote_if_needed(k);
        }
        for (const auto& m : r.measures) {
            out << ',' << (m ? format_measure(*m) : std::string("NA"));
        }
        out << '\n';
    }
}

} // namespace chronoplot
