// Acceptance checks, one PASS/FAIL line per criterion.

#include <chronoplot/cli/commands.hpp>
#include <chronoplot/grammar/pipeline.hpp>
#include <chronoplot/render/svg.hpp>

#include "../support/oracles.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

namespace {

using namespace chronoplot;
using namespace chronoplot::grammar;
namespace fs = std::filesystem;

const fs::path test_dir = CHRONOPLOT_TEST_DIR;

struct Outcome
{
    bool pass = true;
    std::string detail;

    void fail(const std::string& why)
    {
        if (pass) {
            detail = why;
        }
        pass = false;
    }
};

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Same resolution rules as the command line, without --data overrides.
ResolvedPlot plot_from(const fs::path& spec_path, const std::function<void(PlotSpec&)>& tweak = {})
{
    PlotSpec spec = parse_plot_spec(read_file(spec_path));
    if (tweak) {
        tweak(spec);
    }
    static const TimeZoneRegistry zones;
    const DataResolver resolve = [&](const DataRef& ref) {
        SeriesSchema schema;
        if (ref.index) schema.index = *ref.index;
        if (ref.granularity) schema.granularity = *ref.granularity;
        if (ref.tz) schema.tz = *ref.tz;
        if (ref.keys) schema.keys = *ref.keys;
        if (ref.measures) schema.measures = *ref.measures;
        CsvResult csv = read_csv(spec_path.parent_path() / ref.source, schema, zones);
        return LayerData{std::move(csv.series), std::move(csv.warnings)};
    };
    return build_plot(spec, resolve, zones);
}

int cli(std::vector<std::string> args, std::string* out = nullptr)
{
    args.insert(args.begin(), "chronoplot");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
    if (out) {
        *out = o.str();
    }
    return code;
}

template <typename T>
std::size_t count_shapes(const render::ScenePanel& panel)
{
    return static_cast<std::size_t>(std::count_if(panel.marks.begin(), panel.marks.end(),
                                                  [](const render::Element& e) { return std::holds_alternative<T>(e); }));
}

// ---------------------------------------------------------------------------

Outcome granularity_axioms()
{
    Outcome o;
    const auto started = std::chrono::steady_clock::now();
    const std::vector<TimeZoneRef> zones{utc(), TimeZoneRegistry::builtin("dst-spring"),
                                         TimeZoneRegistry::builtin("dst-fall"), TimeZoneRegistry::builtin("fixed+05:30")};
    const std::int64_t lo_t = -2208988800;  // 1900-01-01
    const std::int64_t hi_t = 4133980799;   // 2100-12-31T23:59:59
    std::mt19937_64 rng(20240607);
    std::uniform_int_distribution<std::int64_t> instant(lo_t, hi_t);
    std::size_t cases = 0;

    for (Unit u : {Unit::second, Unit::minute, Unit::hour, Unit::day, Unit::week, Unit::month, Unit::year}) {
        for (const auto& tz : zones) {
            const std::int64_t first = granule_index(u, lo_t, *tz);
            const std::int64_t last = granule_index(u, hi_t, *tz);
            std::uniform_int_distribution<std::int64_t> idx(first, last);
            // (1) i < j: granule i lies entirely before granule j.
            for (int n = 0; n < 10000; ++n, ++cases) {
                std::int64_t i = idx(rng), j = idx(rng);
                if (i == j) continue;
                if (i > j) std::swap(i, j);
                if (granule_bounds_seconds(u, i, *tz).end > granule_bounds_seconds(u, j, *tz).start) {
                    o.fail(std::string(unit_name(u)) + " ordering broken in " + tz->id());
                }
            }
            // (2) contiguity: exhaustive for day and coarser, sampled below.
            const bool exhaustive = u >= Unit::day;
            const std::int64_t steps = exhaustive ? last - first : 10000;
            for (std::int64_t s = 0; s < steps; ++s, ++cases) {
                const std::int64_t i = exhaustive ? first + s : idx(rng);
                if (granule_bounds_seconds(u, i, *tz).end != granule_bounds_seconds(u, i + 1, *tz).start) {
                    o.fail(std::string(unit_name(u)) + " contiguity broken in " + tz->id());
                }
            }
            // Every instant belongs to exactly the granule whose bounds hold it.
            for (int n = 0; n < 2000; ++n, ++cases) {
                const std::int64_t t = instant(rng);
                const auto b = granule_bounds_seconds(u, granule_index(u, t, *tz), *tz);
                if (!(b.start <= t && t < b.end)) {
                    o.fail(std::string(unit_name(u)) + " membership broken in " + tz->id());
                }
            }
        }
    }
    // Circular periodicity.
    const auto dow = GranularitySpec::circular(CircularUnit::day_of_week);
    const auto moy = GranularitySpec::circular(CircularUnit::month_of_year);
    std::uniform_int_distribution<std::int64_t> day(-25567, 47846);
    for (int n = 0; n < 10000; ++n, ++cases) {
        const std::int64_t d = day(rng);
        const std::int64_t m = d / 30;
        if (to_circular(TimePoint{Unit::day, d, utc()}, dow) != to_circular(TimePoint{Unit::day, d + 7, utc()}, dow)
            || to_circular(TimePoint{Unit::day, d, utc()}, dow) != oracle::weekday(d)
            || to_circular(TimePoint{Unit::month, m, utc()}, moy)
                   != to_circular(TimePoint{Unit::month, m + 12, utc()}, moy)) {
            o.fail("periodicity broken");
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (seconds >= 5.0) {
        o.fail("took " + std::to_string(seconds) + " s");
    }
    if (o.pass) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%zu cases over 7 units and 4 zones in %.2f s", cases, seconds);
        o.detail = buf;
    }
    return o;
}

Outcome calendar_oracle()
{
    Outcome o;
    const auto dates = oracle::enumerate_dates(1900, 2100);
    std::int64_t expected = oracle::day_count({1900, 1, 1});
    std::size_t mismatches = 0;
    for (const auto& d : dates) {
        const CivilDate c{d.y, d.m, d.d};
        const CivilDate back = civil_from_days(expected);
        if (days_from_civil(c) != expected || back.year != d.y || back.month != d.m || back.day != d.d
            || static_cast<int>(weekday_from_days(expected)) != oracle::weekday(expected)) {
            ++mismatches;
        }
        ++expected;
    }
    if (mismatches) {
        o.fail(std::to_string(mismatches) + " mismatches");
    } else {
        o.detail = std::to_string(dates.size()) + " days 1900-01-01..2100-12-31, 0 mismatches";
    }
    return o;
}

struct SolidPiece
{
    double x0, y0, x1, y1;
};

bool crosses(const SolidPiece& a, const SolidPiece& b)
{
    const auto cross = [](double ax, double ay, double bx, double by, double cx, double cy) {
        return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    };
    const double d1 = cross(a.x0, a.y0, a.x1, a.y1, b.x0, b.y0);
    const double d2 = cross(a.x0, a.y0, a.x1, a.y1, b.x1, b.y1);
    const double d3 = cross(b.x0, b.y0, b.x1, b.y1, a.x0, a.y0);
    const double d4 = cross(b.x0, b.y0, b.x1, b.y1, a.x1, a.y1);
    if (d1 == 0 && d2 == 0) {
        const double lo = std::max(std::min(a.x0, a.x1), std::min(b.x0, b.x1));
        const double hi = std::min(std::max(a.x0, a.x1), std::max(b.x0, b.x1));
        return hi > lo;
    }
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

Outcome dst_slopes()
{
    Outcome o;
    std::string detail;
    for (const char* name : {"dst_spring_civil", "dst_fall_civil"}) {
        const auto plot = plot_from(test_dir / "gallery" / (std::string(name) + ".json"));
        int dashed = 0;
        std::vector<SolidPiece> solid;
        for (const auto& line : plot.panels.front().lines) {
            if (line.dashed) {
                ++dashed;
                if (line.points.front().y != line.points.back().y) {
                    o.fail(std::string(name) + ": dashed segment not parallel to the time axis");
                }
                continue;
            }
            for (std::size_t i = 1; i < line.points.size(); ++i) {
                const auto& a = line.points[i - 1];
                const auto& b = line.points[i];
                solid.push_back({a.x, a.y, b.x, b.y});
                const double slope = (b.y - a.y) / ((b.x - a.x) / 3600.0);
                if (std::abs(slope - 1.0) > 1e-9) {
                    o.fail(std::string(name) + ": slope " + std::to_string(slope));
                }
            }
        }
        if (dashed != 1) {
            o.fail(std::string(name) + ": " + std::to_string(dashed) + " dashed segments");
        }
        for (std::size_t i = 0; i < solid.size(); ++i) {
            for (std::size_t j = i + 1; j < solid.size(); ++j) {
                if (crosses(solid[i], solid[j])) {
                    o.fail(std::string(name) + ": overlapping solid segments");
                }
            }
        }
        detail += std::string(detail.empty() ? "" : "; ") + name + ": " + std::to_string(solid.size())
            + " solid segments at slope 1, " + std::to_string(dashed) + " dashed";
    }
    if (o.pass) {
        o.detail = detail;
    }
    return o;
}

Outcome mixed_alignment()
{
    Outcome o;
    for (double align : {0.0, 0.5}) {
        const auto plot = plot_from(test_dir / "gallery" / "mixed_alignment.json",
                                    [&](PlotSpec& s) { s.scale_x.align_mixed = align; });
        const auto scene = render::build_scene(plot);
        std::vector<double> annual, marks;
        // Circles come out in layer order: six years, then twelve daily marks.
        for (const auto& e : scene.panels.front().marks) {
            if (const auto* c = std::get_if<render::CircleShape>(&e)) {
                (annual.size() < 6 ? annual : marks).push_back(c->c.x);
            }
        }
        if (annual.size() != 6 || marks.size() != 12) {
            o.fail("unexpected mark count");
            return o;
        }
        for (int k = 0; k < 6; ++k) {
            const std::int64_t year = 2015 + k;
            const double jan = marks[static_cast<std::size_t>(2 * k)];
            const double jul = marks[static_cast<std::size_t>(2 * k + 1)];
            // Oracle in days: the year point sits at align * L, the marks at
            // align of their own day, on Jan 1 and on day 182 (July 2).
            const double len = oracle::leap(year) ? 366.0 : 365.0;
            const double a = align * len;
            const double j = align;
            const double u = (oracle::leap(year) ? 183.0 : 182.0) + align;
            const double expected = (a - j) / (u - j);
            const double got = (annual[static_cast<std::size_t>(k)] - jan) / (jul - jan);
            if (std::abs(got - expected) > 1e-9) {
                o.fail("year " + std::to_string(year) + " align " + std::to_string(align) + ": fraction "
                       + std::to_string(got) + " expected " + std::to_string(expected));
            }
            if (align == 0.0 && annual[static_cast<std::size_t>(k)] != jan) {
                o.fail("align 0 year point is not on Jan 1");
            }
        }
    }
    if (o.pass) {
        o.detail = "align 0 puts years on Jan 1; align 0.5 at the year midpoint (non-leap years meet the Jul 2 mark)";
    }
    return o;
}

Outcome ragged_justified()
{
    Outcome o;
    const auto ragged = plot_from(test_dir / "gallery" / "months_ragged.json");
    if (ragged.cycles.size() != 12) {
        o.fail("expected 12 monthly cycles");
        return o;
    }
    const double feb = ragged.cycles[1] / ragged.x_axis.hi;
    if (std::abs(feb - 28.0 / 31.0) > 1e-9) {
        o.fail("February ends at " + std::to_string(feb));
    }
    const auto justified = plot_from(test_dir / "gallery" / "months_justified.json");
    for (double len : justified.cycles) {
        if (len != 1.0) {
            o.fail("justified cycle of length " + std::to_string(len));
        }
    }
    if (justified.x_axis.hi != 1.0) {
        o.fail("justified axis does not end at 1");
    }
    const ScaleState& st = justified.scale;
    const double april = static_cast<double>(oracle::day_count({2019, 4, 1})) * 86400.0;
    const double february = static_cast<double>(oracle::day_count({2019, 2, 1})) * 86400.0;
    const double a = st.to_scale(april + 3 * 86400.0);
    const double f = st.to_scale(february + 2.8 * 86400.0);
    if (std::abs(a - 3.1) > 1e-12 || std::abs(f - 1.1) > 1e-12) {
        o.fail("warp gives " + std::to_string(a) + " and " + std::to_string(f));
    }
    if (o.pass) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "Feb ends at %.12f (28/31); warped cycles end at 1; 3 d into Apr -> %.12f, "
                      "2.8 d into Feb -> %.12f", feb, a - 3, f - 1);
        o.detail = buf;
    }
    return o;
}

Outcome loop_navigation()
{
    Outcome o;
    const auto scene_for = [](const char* name) {
        return render::build_scene(plot_from(test_dir / "gallery" / (std::string(name) + ".json")));
    };
    const auto flat = scene_for("hourly_cartesian");
    if (flat.panels.size() != 1 || count_shapes<render::PolylineShape>(flat.panels[0]) != 1) {
        o.fail("cartesian: expected 1 panel with 1 polyline");
    }
    const auto looped = scene_for("hourly_loop_day");
    if (looped.panels.size() != 1 || count_shapes<render::PolylineShape>(looped.panels[0]) != 14) {
        o.fail("loop: expected 1 panel with 14 polylines");
    }
    const auto cal = scene_for("hourly_calendar");
    std::vector<std::pair<int, int>> cells;
    for (const auto& p : cal.panels) {
        cells.emplace_back(p.row, p.col);
    }
    std::sort(cells.begin(), cells.end());
    std::vector<std::pair<int, int>> grid;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 7; ++c) grid.emplace_back(r, c);
    if (cells != grid) {
        o.fail("calendar: expected 14 cells in 2x7");
    }
    if (o.pass) {
        o.detail = "cartesian 1 panel/1 polyline; loop 1 panel/14 cycles; calendar 14 cells in 2x7";
    }
    return o;
}

double peak_x(const ResolvedPlot& plot, int layer)
{
    double best_y = -1e300, best_x = 0;
    for (const auto& line : plot.panels.front().lines) {
        if (line.layer != layer) continue;
        for (const auto& p : line.points) {
            if (p.y > best_y) {
                best_y = p.y;
                best_x = p.x;
            }
        }
    }
    return best_x;
}

Outcome civil_absolute()
{
    Outcome o;
    const auto civil = plot_from(test_dir / "gallery" / "civil_two_zones.json");
    const auto absolute = plot_from(test_dir / "gallery" / "absolute_two_zones.json");
    const double dc = peak_x(civil, 0) - peak_x(civil, 1);
    const double da = peak_x(absolute, 0) - peak_x(absolute, 1);
    if (!(std::abs(dc) < 1e-9)) {
        o.fail("civil peaks differ by " + std::to_string(dc));
    }
    if (da != 36000.0) {
        o.fail("absolute peaks differ by " + std::to_string(da) + " s");
    }
    if (o.pass) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "civil dx = %g; absolute dx = %.0f s (10 h)", dc, da);
        o.detail = buf;
    }
    return o;
}

Outcome validation_linting()
{
    Outcome o;
    std::string out;
    const int dup = cli({"validate", "--data", (test_dir / "data" / "duplicates.csv").string(), "--index", "date",
                         "--keys", "sensor"},
                        &out);
    const auto dup_n = nlohmann::json::parse(out)["duplicates"].size();
    const int two = cli({"validate", "--data", (test_dir / "data" / "two_series.csv").string(), "--index", "date",
                         "--measures", "value"},
                        &out);
    const auto two_n = nlohmann::json::parse(out)["duplicates"].size();
    if (dup != cli::exit_validity || dup_n == 0) {
        o.fail("duplicated timestamps: exit " + std::to_string(dup));
    }
    if (two != cli::exit_validity || two_n == 0) {
        o.fail("undeclared series: exit " + std::to_string(two));
    }
    if (o.pass) {
        o.detail = "duplicates fixture: " + std::to_string(dup_n) + " entry, exit 3; undeclared series: "
            + std::to_string(two_n) + " entries, exit 3";
    }
    return o;
}

Outcome determinism()
{
    Outcome o;
    std::vector<fs::path> specs;
    for (const auto& e : fs::directory_iterator(test_dir / "gallery")) {
        if (e.path().extension() == ".json") specs.push_back(e.path());
    }
    std::sort(specs.begin(), specs.end());
    for (const auto& spec : specs) {
        std::string a, b;
        const int ca = cli({"plot", "--spec", spec.string()}, &a);
        const int cb = cli({"plot", "--spec", spec.string()}, &b);
        const fs::path golden = test_dir / "golden" / (spec.stem().string() + ".svg");
        if (ca != 0 || cb != 0) {
            o.fail(spec.stem().string() + ": plot failed");
        } else if (a != b) {
            o.fail(spec.stem().string() + ": runs differ");
        } else if (!fs::exists(golden) || read_file(golden) != a) {
            o.fail(spec.stem().string() + ": differs from golden");
        }
    }
    if (specs.empty()) {
        o.fail("no gallery specs");
    }
    if (o.pass) {
        o.detail = std::to_string(specs.size()) + " gallery SVGs byte-identical across two runs and to golden";
    }
    return o;
}

Outcome warp_loop_composition()
{
    Outcome o;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> gap(1e-3, 1e7);
    std::size_t points = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> marks{std::uniform_real_distribution<double>(-3e9, 3e9)(rng)};
        const int n = std::uniform_int_distribution<int>(1, 40)(rng);
        for (int i = 0; i < n; ++i) marks.push_back(marks.back() + gap(rng));
        const Warp w(marks);
        std::vector<double> warped;
        for (std::size_t k = 0; k < marks.size(); ++k) {
            warped.push_back(w(marks[k]));
            if (warped.back() != static_cast<double>(k)) {
                o.fail("landmark " + std::to_string(k) + " maps to " + std::to_string(warped.back()));
            }
        }
        std::uniform_real_distribution<double> x(marks.front(), marks.back());
        for (int p = 0; p < 100; ++p, ++points) {
            const auto lp = loop_transform(w(x(rng)), warped);
            if (lp && !(lp->local >= 0.0 && lp->local < 1.0)) {
                o.fail("local x " + std::to_string(lp->local) + " outside [0, 1)");
            }
        }
    }
    if (o.pass) {
        o.detail = "1000 landmark sets, " + std::to_string(points) + " points, all local x in [0, 1)";
    }
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"granularity axioms", granularity_axioms},
        {"calendrical oracle equivalence", calendar_oracle},
        {"DST slope reproduction", dst_slopes},
        {"mixed-granularity alignment", mixed_alignment},
        {"ragged vs justified loops", ragged_justified},
        {"loop navigation", loop_navigation},
        {"civil/absolute alignment", civil_absolute},
        {"validation linting", validation_linting},
        {"determinism", determinism},
        {"warp/loop composition", warp_loop_composition},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
