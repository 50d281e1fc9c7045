#include "eph/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "eph/error.hpp"
#include "eph/metric.hpp"
#include "eph/render.hpp"
#include "eph/verify.hpp"

namespace eph::cli {

namespace {

struct UsageFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Point parse_point(const std::string& s) {
    const auto comma = s.find(',');
    double p[2] = {0, 0};
    const std::string parts[2] = {s.substr(0, comma), comma == std::string::npos ? "" : s.substr(comma + 1)};
    for (int i = 0; i < 2; ++i) {
        const auto& w = parts[i];
        const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), p[i]);
        if (comma == std::string::npos || w.empty() || ec != std::errc() || ptr != w.data() + w.size() ||
            !std::isfinite(p[i])) {
            throw UsageFailure("expected a point u,v but got '" + s + "'");
        }
    }
    return {p[0], p[1]};
}

const std::map<std::string, GeometryKind> kGeometries{
    {"elliptic", GeometryKind::Elliptic}, {"parabolic", GeometryKind::Parabolic}, {"hyperbolic", GeometryKind::Hyperbolic}};

Relabel parse_label(const std::string& s) {
    if (s == "identity") return Relabel::identity();
    if (s == "double") return Relabel::doubled();
    if (s == "asinh") return Relabel::sinh_inv();
    if (s == "asin") return Relabel::sin_inv();
    if (s.rfind("scale:", 0) == 0) {
        const std::string c = s.substr(6);
        double x = 0;
        const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), x);
        if (ec == std::errc() && ptr == c.data() + c.size() && x > 0) {
            return Relabel::scaled(x);
        }
    }
    throw UsageFailure("unknown label '" + s + "' (identity, double, asinh, asin, scale:c)");
}

struct Common {
    std::string geometry = "parabolic";
    int flavor = 0;

    void add(CLI::App* app, bool with_geometry = true) {
        if (with_geometry) {
            app->add_option("--geometry", geometry, "elliptic, parabolic or hyperbolic")
                ->check(CLI::IsMember({"elliptic", "parabolic", "hyperbolic"}));
        }
        app->add_option("--flavor", flavor, "parabolic flavor -1 (P_e), 0 (P_p) or 1 (P_h)")
            ->check(CLI::IsMember({-1, 0, 1}));
    }
    GeometryKind kind() const { return kGeometries.at(geometry); }
    ParabolicFlavor parabolic_flavor() const { return ParabolicFlavor(flavor); }
};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string point_text(Point p) { return num(p.u) + "," + num(p.v); }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << content)) {
        throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    }
}

std::string numbered(const std::string& path, std::size_t n, std::size_t total) {
    if (total == 1) {
        return path;
    }
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    const std::string stem = has_ext ? path.substr(0, dot) : path;
    return stem + "_" + std::to_string(n) + (has_ext ? path.substr(dot) : "");
}

// Reads the u and v columns of a CSV with a header row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return i;
        }
        throw UsageFailure("CSV lacks a '" + name + "' column");
    }
    double number(std::size_t row, std::size_t col) const {
        const std::string& w = rows.at(row).at(col);
        double x = 0;
        const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), x);
        if (ec != std::errc() || ptr != w.data() + w.size()) {
            throw UsageFailure("CSV row " + std::to_string(row + 2) + ": bad number '" + w + "'");
        }
        return x;
    }
};

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageFailure("cannot read " + path);
    }
    CsvTable t;
    std::string line;
    auto split = [](const std::string& l) {
        std::vector<std::string> out;
        std::stringstream ss(l);
        for (std::string cell; std::getline(ss, cell, ',');) {
            while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
            while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
            out.push_back(cell);
        }
        return out;
    };
    if (!std::getline(in, line)) {
        throw UsageFailure(path + " is empty");
    }
    t.header = split(line);
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        t.rows.push_back(split(line));
        if (t.rows.back().size() != t.header.size()) {
            throw UsageFailure("CSV row " + std::to_string(t.rows.size() + 1) + " has the wrong number of columns");
        }
    }
    return t;
}

}  // namespace

unsigned default_threads() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("EPH_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) {
            n = std::min<unsigned>(n, static_cast<unsigned>(cap));
        }
    }
    return n;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Invariant distances, geodesics and figures for the EPH geometries of the upper half-plane", "eph"};
    app.require_subcommand(1);

    // distance
    auto* distance_cmd = app.add_subcommand("distance", "Invariant distance between two points");
    Common d_common;
    d_common.add(distance_cmd);
    std::string d_z, d_w, d_label = "identity";
    distance_cmd->add_option("--z", d_z, "first point u,v")->required();
    distance_cmd->add_option("--w", d_w, "second point u,v")->required();
    distance_cmd->add_option("--label", d_label, "relabelling h: identity, double, asinh, asin, scale:c");

    // geodesic
    auto* geodesic_cmd = app.add_subcommand("geodesic", "Geodesic family members, pairs and the additivity ODE");
    Common g_common;
    g_common.add(geodesic_cmd);
    std::vector<double> g_t;
    std::vector<std::string> g_through;
    bool g_ode = false, g_slope_only = false;
    int g_direction = 1;
    double g_umax = 3.0, g_step = 1e-3, g_slope = 0.0;
    std::string g_csv;
    geodesic_cmd->add_option("--t", g_t, "family parameter(s)");
    geodesic_cmd->add_option("--through", g_through, "two points u,v (parabolic)")->expected(2);
    geodesic_cmd->add_flag("--additivity-slope", g_slope_only, "with --through: slope of the additivity ODE");
    geodesic_cmd->add_flag("--ode", g_ode, "integrate the additivity ODE from i and fit the family");
    geodesic_cmd->add_option("--direction", g_direction, "+1 or -1")->check(CLI::IsMember({-1, 1}));
    geodesic_cmd->add_option("--u-max", g_umax, "integration range |u|")->check(CLI::PositiveNumber);
    geodesic_cmd->add_option("--step", g_step, "RK4 step");
    geodesic_cmd->add_option("--slope", g_slope, "initial slope v'(0)");
    geodesic_cmd->add_option("--csv", g_csv, "write integrated samples");

    // orbit
    auto* orbit_cmd = app.add_subcommand("orbit", "Equidistant orbit of a point stabilizer");
    Common o_common;
    o_common.add(orbit_cmd);
    std::string o_center = "0,1", o_through, o_subgroup, o_csv;
    double o_from = 0, o_to = 0;
    std::size_t o_count = 0;
    orbit_cmd->add_option("--center", o_center, "fixed point u,v");
    orbit_cmd->add_option("--through", o_through, "orbit start u,v")->required();
    orbit_cmd->add_option("--subgroup", o_subgroup, "K, Nprime or Aprime")
        ->check(CLI::IsMember({"K", "Nprime", "Aprime"}));
    auto* o_from_opt = orbit_cmd->add_option("--from", o_from, "first parameter");
    auto* o_to_opt = orbit_cmd->add_option("--to", o_to, "last parameter");
    orbit_cmd->add_option("--count", o_count, "number of samples");
    orbit_cmd->add_option("--csv", o_csv, "write samples here instead of stdout");

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "Triangle inequality classification (parabolic)");
    Common c_common;
    c_common.add(classify_cmd, false);
    std::string c_w1, c_w2, c_z, c_points, c_out, c_branch = "connecting";
    double c_band = kEqualityBand;
    bool c_plane = false;
    classify_cmd->add_option("--w1", c_w1, "first endpoint u,v")->required();
    classify_cmd->add_option("--w2", c_w2, "second endpoint u,v")->required();
    auto* c_z_opt = classify_cmd->add_option("--z", c_z, "query point u,v");
    auto* c_points_opt = classify_cmd->add_option("--points-csv", c_points, "CSV with u and v columns");
    c_z_opt->excludes(c_points_opt);
    classify_cmd->add_option("--branch", c_branch, "connecting or outer")
        ->check(CLI::IsMember({"connecting", "outer"}));
    classify_cmd->add_option("--band", c_band, "vertical Equality band around the geodesics")
        ->check(CLI::NonNegativeNumber);
    classify_cmd->add_flag("--plane", c_plane, "classify outside the strip too (raster rule)");
    classify_cmd->add_option("--out", c_out, "write the CSV result here instead of stdout");

    // render
    auto* render_cmd = app.add_subcommand("render", "Render a scene file to SVG (and CSV)");
    std::string r_scene, r_out, r_csv, r_raster_csv;
    unsigned r_threads = 0;
    render_cmd->add_option("scene", r_scene, "scene file")->required();
    render_cmd->add_option("--out", r_out, "SVG path; several panels give stem_N.svg")->required();
    render_cmd->add_option("--csv", r_csv, "curve samples curve_id,T,u,v");
    render_cmd->add_option("--raster-csv", r_raster_csv, "raster cells i,j,u,v,class");
    render_cmd->add_option("--threads", r_threads, "raster threads (default: hardware, capped by EPH_THREADS)");

    // cayley
    auto* cayley_cmd = app.add_subcommand("cayley", "Cayley transform of dual numbers");
    Common y_common;
    y_common.add(cayley_cmd, false);
    std::string y_w;
    bool y_inverse = false;
    cayley_cmd->add_option("--w", y_w, "point u,v")->required();
    cayley_cmd->add_flag("--inverse", y_inverse, "disk to half-plane");

    // length
    auto* length_cmd = app.add_subcommand("length", "Invariant length of a curve");
    Common l_common;
    l_common.add(length_cmd);
    std::vector<std::string> l_segment;
    std::string l_csv, l_id;
    bool l_timelike = false;
    double l_tol = 1e-8;
    auto* l_segment_opt = length_cmd->add_option("--segment", l_segment, "straight segment from u,v to u,v")->expected(2);
    auto* l_csv_opt = length_cmd->add_option("--csv", l_csv, "curve CSV curve_id,T,u,v");
    l_segment_opt->excludes(l_csv_opt);
    length_cmd->add_option("--curve-id", l_id, "curve to measure (default: the first)");
    length_cmd->add_flag("--timelike", l_timelike, "integrate sqrt(-ds^2) for hyperbolic time-like curves");
    length_cmd->add_option("--tolerance", l_tol, "relative quadrature tolerance")->check(CLI::PositiveNumber);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
    std::string v_suite;
    std::uint64_t v_seed = 0;
    verify_cmd->add_option("--suite", v_suite, "invariance, additivity, ode, metric, region or oracle")
        ->required()
        ->check(CLI::IsMember(verify::suite_names()));
    verify_cmd->add_option("--seed", v_seed, "random seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Ok : UsageError;
    }

    try {
        if (distance_cmd->parsed()) {
            const DistanceSpec spec{d_common.kind(), d_common.parabolic_flavor(), parse_label(d_label)};
            const auto r = distance(spec, parse_point(d_z), parse_point(d_w));
            out << "value=" << num(r.value) << " core=" << num(r.core)
                << " interval=" << (r.interval ? std::string(to_string(*r.interval)) : "none")
                << " degenerate=" << (r.vertical_degenerate ? "vertical" : "none") << '\n';
        } else if (geodesic_cmd->parsed()) {
            const ParabolicFlavor flavor = g_common.parabolic_flavor();
            if (g_ode) {
                GeodesicOdeOptions o;
                o.flavor = flavor;
                o.direction = g_direction;
                o.u_max = g_umax;
                o.step = g_step;
                o.initial_slope = g_slope;
                const PolyCurve c = integrate_geodesic(o);
                const FamilyFit fit = fit_to_family(c, flavor);
                out << "samples=" << c.size() << " t=" << num(fit.t) << " max_residual=" << num(fit.max_residual)
                    << " cycle=" << geodesic_family(flavor, fit.t).label(6) << '\n';
                if (!g_csv.empty()) {
                    Polyline pl{"ode", {}, {}};
                    for (const auto& s : c.samples()) {
                        pl.T.push_back(s.T);
                        pl.points.push_back(s.p);
                    }
                    write_file(g_csv, curves_csv({pl}));
                }
            } else if (!g_through.empty()) {
                const Point w1 = parse_point(g_through[0]), w2 = parse_point(g_through[1]);
                if (g_slope_only) {
                    out << "slope=" << num(additivity_slope(w1, w2, flavor)) << '\n';
                } else {
                    for (const auto& g : geodesics_through_pair(w1, w2, flavor)) {
                        out << (g.connecting ? "connecting" : "outer") << " t=" << num(g.t)
                            << " cycle=" << g.cycle.label(6) << '\n';
                    }
                }
            } else if (!g_t.empty()) {
                for (double t : g_t) {
                    switch (g_common.kind()) {
                        case GeometryKind::Elliptic:
                            out << "t=" << num(t) << " cycle=" << elliptic_geodesic_through_i(t).label(6) << '\n';
                            break;
                        case GeometryKind::Hyperbolic: {
                            const auto h = hyperbolic_geodesics_through_i(t);
                            out << "t=" << num(t) << " spacelike=" << h.spacelike.label(6)
                                << " timelike=" << h.timelike.label(6) << '\n';
                            break;
                        }
                        case GeometryKind::Parabolic: {
                            const Cycle c = geodesic_family(flavor, t);
                            out << "t=" << num(t) << " cycle=" << c.label(6)
                                << " f_orthogonality=" << num(f_orthogonality_defect(c, flavor));
                            if (c.k != 0) {
                                out << " focus=" << point_text(parabola_focus(c, FocusNotion::UsualFocus))
                                    << " vertex=" << point_text(parabola_focus(c, FocusNotion::Vertex))
                                    << " directrix_nearest=" << point_text(parabola_focus(c, FocusNotion::DirectrixNearest));
                            }
                            out << '\n';
                            break;
                        }
                    }
                }
            } else {
                throw UsageFailure("geodesic needs --t, --through or --ode");
            }
        } else if (orbit_cmd->parsed()) {
            OrbitObject o;
            o.center = parse_point(o_center);
            o.through = parse_point(o_through);
            if (!o_subgroup.empty()) {
                o.subgroup = o_subgroup == "K" ? SubgroupKind::K
                             : o_subgroup == "Nprime" ? SubgroupKind::Nprime
                                                      : SubgroupKind::Aprime;
            }
            if (o_from_opt->count()) o.from = o_from;
            if (o_to_opt->count()) o.to = o_to;
            o.count = o_count;
            const BoundingBox wide{-1e6, 1e6, 0, 1e6};
            const std::string csv = curves_csv(trace_orbit(o, o_common.kind(), wide, "orbit"));
            if (o_csv.empty()) {
                out << csv;
            } else {
                write_file(o_csv, csv);
            }
        } else if (classify_cmd->parsed()) {
            const DistanceSpec spec{GeometryKind::Parabolic, c_common.parabolic_flavor(), Relabel::identity()};
            const Point w1 = parse_point(c_w1), w2 = parse_point(c_w2);
            if (c_z_opt->count()) {
                const auto branch = c_branch == "outer" ? GeodesicBranch::Outer : GeodesicBranch::Connecting;
                const TriangleClass cls = c_plane ? raster_class(spec, w1, w2, parse_point(c_z), true, c_band)
                                                  : classify_triangle(spec, w1, w2, parse_point(c_z), branch, c_band);
                out << "class=" << to_string(cls) << '\n';
            } else if (c_points_opt->count()) {
                const CsvTable t = read_csv(c_points);
                const std::size_t cu = t.column("u"), cv = t.column("v");
                std::string csv = "u,v,class\n";
                char buf[96];
                for (std::size_t r = 0; r < t.rows.size(); ++r) {
                    const Point z{t.number(r, cu), t.number(r, cv)};
                    std::snprintf(buf, sizeof buf, "%.17g,%.17g,", z.u, z.v);
                    csv += buf;
                    csv += to_string(raster_class(spec, w1, w2, z, c_plane, c_band));
                    csv += '\n';
                }
                if (c_out.empty()) {
                    out << csv;
                } else {
                    write_file(c_out, csv);
                }
            } else {
                throw UsageFailure("classify needs --z or --points-csv");
            }
        } else if (render_cmd->parsed()) {
            Scene scene;
            try {
                scene = parse_scene_file(r_scene);
            } catch (const Error& e) {
                throw UsageFailure(e.what());
            }
            const unsigned threads = r_threads ? std::min(r_threads, default_threads()) : default_threads();
            const std::size_t n = scene.panels.size();
            for (std::size_t k = 0; k < n; ++k) {
                const RenderedPanel panel = render_panel(scene.panels[k], threads);
                const std::string svg = numbered(r_out, k + 1, n);
                write_file(svg, panel.svg);
                out << "wrote " << svg << '\n';
                if (!r_csv.empty()) {
                    write_file(numbered(r_csv, k + 1, n), curves_csv(panel.curves));
                    out << "wrote " << numbered(r_csv, k + 1, n) << '\n';
                }
                if (!r_raster_csv.empty() && !panel.rasters.empty()) {
                    write_file(numbered(r_raster_csv, k + 1, n), raster_csv(panel.rasters));
                    out << "wrote " << numbered(r_raster_csv, k + 1, n) << '\n';
                }
            }
        } else if (cayley_cmd->parsed()) {
            const HNumber w(parse_point(y_w), GeometryKind::Parabolic);
            const ParabolicFlavor flavor = y_common.parabolic_flavor();
            out << point_text((y_inverse ? cayley_inverse(w, flavor) : cayley(w, flavor)).point()) << '\n';
        } else if (length_cmd->parsed()) {
            const GeometryKind kind = l_common.kind();
            std::optional<PolyCurve> curve;
            if (!l_segment.empty()) {
                const Point a = parse_point(l_segment[0]), b = parse_point(l_segment[1]);
                const Point d{b.u - a.u, b.v - a.v};
                curve = PolyCurve::sample(
                    kind, [&](double s) { return Point{a.u + s * d.u, a.v + s * d.v}; },
                    [&](double) { return d; }, 0.0, 1.0, 65);
            } else if (!l_csv.empty()) {
                const CsvTable t = read_csv(l_csv);
                const std::size_t cid = t.column("curve_id"), cT = t.column("T"), cu = t.column("u"),
                                  cv = t.column("v");
                std::vector<double> T;
                std::vector<Point> pts;
                for (std::size_t r = 0; r < t.rows.size(); ++r) {
                    const std::string& id = t.rows[r][cid];
                    if (l_id.empty() && T.empty()) l_id = id;
                    if (id != l_id) continue;
                    T.push_back(t.number(r, cT));
                    pts.push_back({t.number(r, cu), t.number(r, cv)});
                }
                if (T.empty()) {
                    throw UsageFailure("no samples for curve '" + l_id + "'");
                }
                curve.emplace(kind, T, pts);
            } else {
                throw UsageFailure("length needs --segment or --csv");
            }
            LengthOptions o;
            o.timelike = l_timelike;
            o.relative_tolerance = l_tol;
            out << "length=" << num(curve_length(*curve, o)) << '\n';
        } else if (verify_cmd->parsed()) {
            const auto report = verify::run_suite(v_suite, v_seed);
            report.print(out);
            if (!report.passed()) {
                for (const auto& c : report.cases) {
                    if (!c.pass) {
                        err << "first failing case: " << report.suite << '/' << c.name << '\n';
                        break;
                    }
                }
                return VerificationFailed;
            }
        }
    } catch (const UsageFailure& e) {
        err << "usage error: " << e.what() << '\n';
        return UsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::InvalidArgument ? UsageError : DomainError;
    } catch (const std::logic_error& e) {
        err << "usage error: " << e.what() << '\n';
        return UsageError;
    }
    return Ok;
}

}  // namespace eph::cli
