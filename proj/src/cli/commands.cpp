#include <chronoplot/cli/commands.hpp>

#include <chronoplot/error.hpp>
#include <chronoplot/grammar/pipeline.hpp>
#include <chronoplot/render/svg.hpp>
#include <chronoplot/report.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace chronoplot::cli {

namespace {

namespace fs = std::filesystem;

struct Options
{
    std::vector<std::string> data;
    std::string spec;
    std::string out;
    std::string index;
    std::string granularity = "day";
    std::string tz = "UTC";
    std::vector<std::string> tz_files;
    std::vector<std::string> keys;
    std::vector<std::string> measures;
    bool strict = false;
    bool fill = false;
    std::string to_granularity;
    std::string stat = "mean";
};

// Marks failures that belong to the input stage (exit 1) rather than to the
// plot specification (exit 2).
struct InputFailure : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct DataSource
{
    std::string alias;
    fs::path path;
};

std::vector<DataSource> data_sources(const Options& opt)
{
    std::vector<DataSource> out;
    for (const std::string& item : opt.data) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            out.push_back({fs::path(item).stem().string(), item});
        } else {
            out.push_back({item.substr(0, eq), item.substr(eq + 1)});
        }
    }
    return out;
}

TimeZoneRegistry load_zones(const Options& opt)
{
    TimeZoneRegistry zones;
    try {
        for (const std::string& f : opt.tz_files) {
            zones.load(f);
        }
    } catch (const Error& e) {
        throw InputFailure(e.what());
    }
    return zones;
}

Unit unit_option(const std::string& text, const char* flag)
{
    try {
        return parse_unit(text);
    } catch (const ArgumentError&) {
        throw InputFailure(std::string(flag) + ": unknown granularity '" + text + "'");
    }
}

CsvResult load(const fs::path& path, const SeriesSchema& schema, const TimeZoneRegistry& zones, bool fill)
{
    try {
        CsvResult r = read_csv(path, schema, zones);
        if (fill) {
            r.series = fill_gaps(r.series);
        }
        return r;
    } catch (const Error& e) {
        throw InputFailure(path.string() + ": " + e.what());
    }
}

SeriesSchema base_schema(const Options& opt)
{
    SeriesSchema s;
    s.index = opt.index;
    s.granularity = unit_option(opt.granularity, "--granularity");
    s.tz = opt.tz;
    s.keys = opt.keys;
    s.measures = opt.measures;
    return s;
}

void write_output(const Options& opt, const std::string& text, std::ostream& out)
{
    if (opt.out.empty() || opt.out == "-") {
        out << text;
        return;
    }
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) {
        throw InputFailure("cannot write " + opt.out);
    }
    file << text;
}

const DataSource& single_source(const Options& opt, std::vector<DataSource>& sources)
{
    sources = data_sources(opt);
    if (sources.size() != 1) {
        throw InputFailure("exactly one --data is required");
    }
    return sources.front();
}

int cmd_validate(const Options& opt, std::ostream& out, std::ostream& err)
{
    std::vector<DataSource> sources;
    const DataSource& src = single_source(opt, sources);
    const auto zones = load_zones(opt);
    const CsvResult csv = load(src.path, base_schema(opt), zones, false);
    for (const std::string& w : csv.warnings) {
        err << "warning: " << w << '\n';
    }
    const ValidationReport report = validate(csv.series);
    err << report_to_text(report, csv.series);
    write_output(opt, report_to_json(report, csv.series).dump(2) + "\n", out);
    const bool clean = report.is_valid() && (!opt.strict || csv.warnings.empty());
    return clean ? exit_ok : exit_validity;
}

int cmd_convert(const Options& opt, std::ostream& out, std::ostream& err)
{
    std::vector<DataSource> sources;
    const DataSource& src = single_source(opt, sources);
    const auto zones = load_zones(opt);
    const Unit target = unit_option(opt.to_granularity, "--to-granularity");
    Stat stat;
    try {
        stat = parse_stat(opt.stat);
    } catch (const Error& e) {
        throw InputFailure(std::string("--stat: ") + e.what());
    }
    const CsvResult csv = load(src.path, base_schema(opt), zones, opt.fill);
    for (const std::string& w : csv.warnings) {
        err << "warning: " << w << '\n';
    }
    const TimeSeries result = aggregate(csv.series, target, stat);
    std::ostringstream text;
    write_csv(text, result);
    write_output(opt, text.str(), out);
    return exit_ok;
}

int cmd_plot(const Options& opt, std::ostream& out, std::ostream& err)
{
    const auto sources = data_sources(opt);
    const auto zones = load_zones(opt);
    const SeriesSchema defaults = base_schema(opt);

    std::string spec_text;
    {
        std::ifstream in(opt.spec, std::ios::binary);
        if (!in) {
            throw InputFailure("cannot read spec " + opt.spec);
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        spec_text = buf.str();
    }
    const grammar::PlotSpec spec = grammar::parse_plot_spec(spec_text);
    const fs::path spec_dir = fs::path(opt.spec).parent_path();

    const grammar::DataResolver resolve = [&](const grammar::DataRef& ref) {
        fs::path path;
        if (ref.source.empty()) {
            if (sources.empty()) {
                throw SpecError("layer has no data source and no --data was given");
            }
            path = sources.front().path;
        } else {
            for (const DataSource& s : sources) {
                if (s.alias == ref.source) {
                    path = s.path;
                    break;
                }
            }
            if (path.empty()) {
                const fs::path candidate = spec_dir / ref.source;
                if (!fs::exists(candidate)) {
                    throw SpecError("unknown data source '" + ref.source + "'");
                }
                path = candidate;
            }
        }
        SeriesSchema schema = defaults;
        if (ref.index) schema.index = *ref.index;
        if (ref.granularity) schema.granularity = *ref.granularity;
        if (ref.tz) schema.tz = *ref.tz;
        if (ref.keys) schema.keys = *ref.keys;
        if (ref.measures) schema.measures = *ref.measures;
        CsvResult csv = load(path, schema, zones, opt.fill);
        return grammar::LayerData{std::move(csv.series), std::move(csv.warnings)};
    };

    const grammar::ResolvedPlot plot = grammar::build_plot(spec, resolve, zones);
    bool violated = false;
    for (const grammar::Diagnostic& d : plot.diagnostics) {
        const bool validity = d.severity == grammar::Severity::validity;
        violated = violated || validity;
        err << (validity ? "warning: " : "note: ") << d.message << '\n';
    }
    if (opt.strict && violated) {
        err << "error: validity violations with --strict; no plot written\n";
        return exit_validity;
    }
    write_output(opt, render::to_svg(render::build_scene(plot)), out);
    return exit_ok;
}

void add_schema_options(CLI::App* cmd, Options& opt)
{
    cmd->add_option("--data", opt.data, "CSV input, optionally alias=path")->required();
    cmd->add_option("--index", opt.index, "time index column (default: first column)");
    cmd->add_option("--granularity", opt.granularity, "index granularity")->capture_default_str();
    cmd->add_option("--tz", opt.tz, "time zone of the index")->capture_default_str();
    cmd->add_option("--tz-file", opt.tz_files, "extra time zone definition file");
    cmd->add_option("--keys", opt.keys, "key columns")->delimiter(',');
    cmd->add_option("--measures", opt.measures, "measure columns (default: the rest)")->delimiter(',');
    cmd->add_option("--out", opt.out, "output file (default: stdout)");
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app("Temporal grammar plotting and time series validation", "chronoplot");
    app.require_subcommand(1);
    Options opt;

    auto* plot = app.add_subcommand("plot", "render a plot spec to SVG");
    add_schema_options(plot, opt);
    plot->get_option("--data")->required(false);
    plot->add_option("--spec", opt.spec, "plot spec (JSON)")->required();
    plot->add_flag("--strict", opt.strict, "treat validity warnings as errors");
    plot->add_flag("--fill-gaps", opt.fill, "insert missing observations before plotting");

    auto* val = app.add_subcommand("validate", "check uniqueness and contiguity");
    add_schema_options(val, opt);
    val->add_flag("--strict", opt.strict, "also fail on ingestion warnings");

    auto* conv = app.add_subcommand("convert", "aggregate to a coarser granularity");
    add_schema_options(conv, opt);
    conv->add_option("--to-granularity", opt.to_granularity, "target granularity")->required();
    conv->add_option("--stat", opt.stat, "mean, sum, min, max, first or last")->capture_default_str();
    conv->add_flag("--fill-gaps", opt.fill, "insert missing observations first");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_input;
    }

    try {
        if (plot->parsed()) {
            return cmd_plot(opt, out, err);
        }
        if (val->parsed()) {
            return cmd_validate(opt, out, err);
        }
        return cmd_convert(opt, out, err);
    } catch (const InputFailure& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const IngestionError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const Error& e) {
        // Spec, scale, landmark, granularity and render problems.
        err << "error: " << e.what() << '\n';
        return exit_spec;
    }
}

} // namespace chronoplot::cli
