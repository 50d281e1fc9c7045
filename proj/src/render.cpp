#include "eph/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>

#include "eph/distance.hpp"
#include "eph/error.hpp"

namespace eph {

namespace {

constexpr const char* kBlue = "#1f77b4";
constexpr const char* kGreen = "#2ca02c";
constexpr const char* kRed = "#d62728";
constexpr int kMargin = 40;
constexpr int kTitle = 24;

std::string format(const char* fmt, ...) {
    va_list args;
    va_start(args, fmt);
    va_list copy;
    va_copy(copy, args);
    const int n = std::vsnprintf(nullptr, 0, fmt, copy);
    va_end(copy);
    std::string out(static_cast<std::size_t>(n) + 1, '\0');
    std::vsnprintf(out.data(), out.size(), fmt, args);
    va_end(args);
    out.pop_back();
    return out;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

BoundingBox expanded(const BoundingBox& b, double f) {
    const double du = f * (b.umax - b.umin), dv = f * (b.vmax - b.vmin);
    return {b.umin - du, b.umax + du, b.vmin - dv, b.vmax + dv};
}

bool inside(const BoundingBox& b, Point p) {
    return p.u >= b.umin && p.u <= b.umax && p.v >= b.vmin && p.v <= b.vmax;
}

// Splits a parametrized sequence into runs of acceptable points.
class Collector {
public:
    Collector(std::string id, BoundingBox keep) : id_(std::move(id)), keep_(keep) {}

    void add(double T, std::optional<Point> p) {
        if (p && std::isfinite(p->u) && std::isfinite(p->v) && p->v > 0 && inside(keep_, *p)) {
            current_.T.push_back(T);
            current_.points.push_back(*p);
        } else {
            flush();
        }
    }

    void flush() {
        if (current_.points.size() >= 2) {
            current_.id = id_ + ".b" + std::to_string(out_.size());
            out_.push_back(std::move(current_));
        }
        current_ = {};
    }

    std::vector<Polyline> take() {
        flush();
        return std::move(out_);
    }

private:
    std::string id_;
    BoundingBox keep_;
    Polyline current_;
    std::vector<Polyline> out_;
};

void vertical_line(Collector& col, double u, const BoundingBox& keep, std::size_t samples) {
    const double lo = std::max(keep.vmin, 0.0);
    for (std::size_t i = 0; i < samples; ++i) {
        const double v = lo + (keep.vmax - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        col.add(v, Point{u, v > 0 ? v : keep.vmax * 1e-6});
    }
    col.flush();
}

std::vector<double> linear_roots(double a, double b) {  // a + b u = 0
    if (b == 0) return {};
    return {-a / b};
}

std::vector<double> quadratic_roots(double k, double l, double m) {  // k u^2 - 2 l u + m = 0
    if (k == 0) return linear_roots(m, -2 * l);
    const double disc = l * l - k * m;
    if (disc < 0) return {};
    const double r = std::sqrt(disc);
    return {(l - r) / k, (l + r) / k};
}

}  // namespace

std::vector<Polyline> trace_cycle(const Cycle& c, const BoundingBox& view, const std::string& id, std::size_t samples) {
    const BoundingBox keep = expanded(view, 0.5);
    Collector col(id, keep);
    const std::size_t n = std::max<std::size_t>(samples, 3);
    auto sweep = [&](double t0, double t1, auto&& fn) {
        for (std::size_t i = 0; i < n; ++i) {
            const double T = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n - 1);
            col.add(T, fn(T));
        }
        col.flush();
    };

    const bool quadric_in_v = c.mode != QuadraticMode::Parabola && c.k != 0;
    if (!quadric_in_v && c.n == 0) {
        const auto roots = c.mode == QuadraticMode::Parabola ? quadratic_roots(c.k, c.l, c.m)
                                                             : linear_roots(c.m, -2 * c.l);
        for (double u : roots) {
            vertical_line(col, u, keep, n);
        }
        return col.take();
    }
    if (!quadric_in_v) {
        // k u^2 (parabola mode only) - 2 l u - 2 n v + m = 0
        const double k = c.mode == QuadraticMode::Parabola ? c.k : 0.0;
        sweep(keep.umin, keep.umax,
              [&](double u) { return std::optional<Point>(Point{u, (k * u * u - 2 * c.l * u + c.m) / (2 * c.n)}); });
        return col.take();
    }
    const double cu = c.l / c.k;
    if (c.mode == QuadraticMode::Circle) {
        const double cv = c.n / c.k;
        const double r2 = cu * cu + cv * cv - c.m / c.k;
        if (r2 <= 0) {
            return {};
        }
        const double r = std::sqrt(r2);
        const std::size_t m = 4 * n;
        for (std::size_t i = 0; i < m; ++i) {
            const double a = -std::numbers::pi / 2 + 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m - 1);
            col.add(a, Point{cu + r * std::cos(a), cv + r * std::sin(a)});
        }
        return col.take();
    }
    // (u - cu)^2 - (v - cv)^2 = R
    const double cv = -c.n / c.k;
    const double R = cu * cu - cv * cv - c.m / c.k;
    const double span = std::max({keep.umax - keep.umin, keep.vmax - keep.vmin, 1.0});
    const double smax = std::asinh(4 * span / std::sqrt(std::max(std::abs(R), 1e-12))) + 1;
    for (int sign : {1, -1}) {
        if (R > 0) {
            const double r = std::sqrt(R);
            sweep(-smax, smax, [&](double s) {
                return std::optional<Point>(Point{cu + sign * r * std::cosh(s), cv + r * std::sinh(s)});
            });
        } else if (R < 0) {
            const double r = std::sqrt(-R);
            sweep(-smax, smax, [&](double s) {
                return std::optional<Point>(Point{cu + r * std::sinh(s), cv + sign * r * std::cosh(s)});
            });
        } else {
            sweep(keep.umin, keep.umax,
                  [&](double u) { return std::optional<Point>(Point{u, cv + sign * (u - cu)}); });
        }
    }
    return col.take();
}

std::vector<Polyline> trace_orbit(const OrbitObject& o, GeometryKind geometry, const BoundingBox& view,
                                  const std::string& id) {
    const SubgroupKind sub = o.subgroup.value_or(natural_subgroup(geometry));
    double from = 0, to = 0;
    std::size_t count = 0;
    switch (sub) {
        case SubgroupKind::K: from = 0; to = std::numbers::pi; count = 1441; break;
        case SubgroupKind::Nprime: from = -40; to = 40; count = 8001; break;
        case SubgroupKind::Aprime: from = -4; to = 4; count = 2001; break;
    }
    from = o.from.value_or(from);
    to = o.to.value_or(to);
    count = o.count ? o.count : count;
    if (count < 2) {
        throw Error(ErrorCode::InvalidArgument, "orbit needs at least two samples");
    }

    const MoebiusMap r = normalizer_to_i(HNumber(o.center, geometry));
    const MoebiusMap back = r.inverse();
    const HNumber start = apply(r, HNumber(o.through, geometry));
    Collector col(id, expanded(view, 0.5));
    for (std::size_t i = 0; i < count; ++i) {
        const double s = from + (to - from) * static_cast<double>(i) / static_cast<double>(count - 1);
        std::optional<Point> p;
        try {
            p = apply(back, apply(subgroup_element(sub, s), start)).point();
        } catch (const Error&) {
        }
        col.add(s, p);
    }
    return col.take();
}

namespace {

class Canvas {
public:
    explicit Canvas(const Panel& p) : p_(p) {}

    double x(double u) const {
        return kMargin + (u - p_.viewport.umin) / (p_.viewport.umax - p_.viewport.umin) * p_.width;
    }
    double y(double v) const {
        return kMargin + kTitle + (p_.viewport.vmax - v) / (p_.viewport.vmax - p_.viewport.vmin) * p_.height;
    }

    void polyline(const Polyline& pl, const char* color, double width, bool dashed = false) {
        body_ += format(R"(<polyline id="%s" fill="none" stroke="%s" stroke-width="%.3f"%s points=")",
                        escape(pl.id).c_str(), color, width, dashed ? R"( stroke-dasharray="6,4")" : "");
        double px = 0, py = 0;
        const std::size_t last = pl.points.size() - 1;
        for (std::size_t i = 0; i <= last; ++i) {
            const double qx = x(pl.points[i].u), qy = y(pl.points[i].v);
            if (i > 0 && i < last && std::abs(qx - px) < 0.5 && std::abs(qy - py) < 0.5) {
                continue;
            }
            body_ += format(i ? " %.3f,%.3f" : "%.3f,%.3f", qx, qy);
            px = qx;
            py = qy;
        }
        body_ += "\"/>\n";
    }

    void line(Point a, Point b, const char* color, double width, bool dashed) {
        body_ += format(R"(<line x1="%.3f" y1="%.3f" x2="%.3f" y2="%.3f" stroke="%s" stroke-width="%.3f"%s/>)" "\n",
                        x(a.u), y(a.v), x(b.u), y(b.v), color, width, dashed ? R"( stroke-dasharray="3,3")" : "");
    }

    void dot(Point p, const char* color) {
        body_ += format(R"(<circle cx="%.3f" cy="%.3f" r="3.000" fill="%s"/>)" "\n", x(p.u), y(p.v), color);
    }

    void cell_run(Point lo, Point hi, const char* color) {
        body_ += format(R"(<rect x="%.3f" y="%.3f" width="%.3f" height="%.3f" fill="%s" shape-rendering="crispEdges"/>)" "\n",
                        x(lo.u), y(hi.v), x(hi.u) - x(lo.u), y(lo.v) - y(hi.v), color);
    }

    // Label at the highest visible point of the curve.
    void label(const std::vector<Polyline>& pieces, const std::string& text, const char* color) {
        const BoundingBox& b = p_.viewport;
        const double su = b.umax - b.umin, sv = b.vmax - b.vmin;
        const Point mid{(b.umin + b.umax) / 2, (b.vmin + b.vmax) / 2};
        const BoundingBox inner{b.umin + 0.02 * su, b.umax - 0.02 * su, b.vmin + 0.04 * sv, b.vmax - 0.06 * sv};
        std::optional<Point> best;
        for (const auto& pl : pieces) {
            for (const auto& q : pl.points) {
                if (inside(inner, q) && (!best || q.v > best->v)) {
                    best = q;
                }
            }
        }
        if (!best) {
            return;
        }
        const char* anchor = best->u > mid.u ? "end" : "start";
        labels_ += format(R"(<text x="%.3f" y="%.3f" font-size="9" fill="%s" text-anchor="%s">%s</text>)" "\n",
                          x(best->u), y(best->v) - 3, color, anchor, escape(text).c_str());
    }

    std::string finish(const std::string& title) const {
        const int W = p_.width + 2 * kMargin, H = p_.height + 2 * kMargin + kTitle;
        const BoundingBox& b = p_.viewport;
        std::string s;
        s += format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" viewBox="0 0 %d %d">)" "\n", W,
                    H, W, H);
        s += format(R"(<rect x="0" y="0" width="%d" height="%d" fill="white"/>)" "\n", W, H);
        s += format(R"(<text x="%d" y="%d" font-size="14" font-family="sans-serif">%s</text>)" "\n", kMargin,
                    kMargin / 2 + kTitle / 2, escape(title).c_str());
        s += format(R"(<defs><clipPath id="plot"><rect x="%.3f" y="%.3f" width="%d" height="%d"/></clipPath></defs>)" "\n",
                    x(b.umin), y(b.vmax), p_.width, p_.height);
        s += "<g clip-path=\"url(#plot)\">\n" + body_ + "</g>\n";
        s += format(R"(<rect x="%.3f" y="%.3f" width="%d" height="%d" fill="none" stroke="black"/>)" "\n", x(b.umin),
                    y(b.vmax), p_.width, p_.height);
        const auto tick = [&](double px, double py, const char* anchor, double value) {
            return format(R"(<text x="%.3f" y="%.3f" font-size="10" text-anchor="%s">%.3f</text>)" "\n", px, py,
                          anchor, value);
        };
        s += tick(x(b.umin), y(b.vmin) + 14, "middle", b.umin);
        s += tick(x(b.umax), y(b.vmin) + 14, "middle", b.umax);
        s += tick(x(b.umin) - 4, y(b.vmin) + 3, "end", b.vmin);
        s += tick(x(b.umin) - 4, y(b.vmax) + 3, "end", b.vmax);
        s += labels_;
        s += "</svg>\n";
        return s;
    }

private:
    const Panel& p_;
    std::string body_, labels_;
};

std::string default_title(const Panel& p) {
    std::string t(to_string(p.geometry));
    if (p.geometry == GeometryKind::Parabolic) {
        t += " " + to_string(p.flavor);
    }
    return t;
}

std::vector<std::pair<Cycle, std::string>> family_members(const Panel& p, double t) {
    switch (p.geometry) {
        case GeometryKind::Elliptic: return {{elliptic_geodesic_through_i(t), ""}};
        case GeometryKind::Parabolic: return {{geodesic_family(p.flavor, t), ""}};
        case GeometryKind::Hyperbolic: {
            const auto h = hyperbolic_geodesics_through_i(t);
            std::vector<std::pair<Cycle, std::string>> out;
            if (p.family != HyperbolicFamily::TimeLike) out.emplace_back(h.spacelike, "s");
            if (p.family != HyperbolicFamily::SpaceLike) out.emplace_back(h.timelike, "t");
            return out;
        }
    }
    return {};
}

void add_curves(RenderedPanel& out, Canvas& canvas, const std::vector<Polyline>& pieces, const char* color,
                bool dashed = false) {
    for (const auto& pl : pieces) {
        canvas.polyline(pl, color, 1.2, dashed);
        out.curves.push_back(pl);
    }
}

}  // namespace

RenderedPanel render_panel(const Panel& p, unsigned threads) {
    RenderedPanel out;
    Canvas canvas(p);
    const BoundingBox& view = p.viewport;
    const DistanceSpec spec{p.geometry, p.flavor, Relabel::identity()};

    for (std::size_t n = 0; n < p.triangles.size(); ++n) {
        const auto& tri = p.triangles[n];
        RasterOptions o;
        o.whole_plane = tri.whole_plane;
        o.threads = threads;
        out.rasters.push_back(region_raster(spec, tri.w1, tri.w2, view, tri.nx, tri.ny, o));
        const Raster& r = out.rasters.back();
        const double dx = (view.umax - view.umin) / static_cast<double>(r.nx);
        const double dy = (view.vmax - view.vmin) / static_cast<double>(r.ny);
        for (std::size_t j = 0; j < r.ny; ++j) {
            for (std::size_t i = 0; i < r.nx;) {
                if (r.at(i, j) != TriangleClass::ReverseTriangle) {
                    ++i;
                    continue;
                }
                std::size_t e = i;
                while (e < r.nx && r.at(e, j) == TriangleClass::ReverseTriangle) ++e;
                canvas.cell_run({view.umin + i * dx, view.vmin + j * dy}, {view.umin + e * dx, view.vmin + (j + 1) * dy},
                                kRed);
                i = e;
            }
        }
    }

    if (view.vmin <= 0) {
        canvas.line({view.umin, 0}, {view.umax, 0}, "black", 1.0, false);
    }
    if (view.umin < 0 && view.umax > 0) {
        canvas.line({0, std::max(view.vmin, 0.0)}, {0, view.vmax}, "#999999", 0.6, true);
    }

    for (std::size_t n = 0; n < p.geodesics.size(); ++n) {
        for (const auto& [cycle, suffix] : family_members(p, p.geodesics[n])) {
            const auto pieces = trace_cycle(cycle, view, "geodesic-" + std::to_string(n) + suffix);
            add_curves(out, canvas, pieces, kBlue);
            canvas.label(pieces, cycle.label(), kBlue);
        }
    }
    for (std::size_t n = 0; n < p.orbits.size(); ++n) {
        add_curves(out, canvas, trace_orbit(p.orbits[n], p.geometry, view, "orbit-" + std::to_string(n)), kGreen);
    }

    auto draw_pair = [&](Point w1, Point w2, const std::string& id) {
        const auto geos = geodesics_through_pair(w1, w2, p.flavor);
        for (std::size_t k = 0; k < geos.size(); ++k) {
            const auto pieces = trace_cycle(geos[k].cycle, view, id + (geos[k].connecting ? "-connecting" : "-outer"));
            add_curves(out, canvas, pieces, kBlue, !geos[k].connecting);
            canvas.label(pieces, geos[k].cycle.label(), kBlue);
        }
        canvas.dot(w1, "black");
        canvas.dot(w2, "black");
    };
    for (std::size_t n = 0; n < p.pairs.size(); ++n) {
        draw_pair(p.pairs[n].w1, p.pairs[n].w2, "pair-" + std::to_string(n));
    }
    for (std::size_t n = 0; n < p.triangles.size(); ++n) {
        const auto& tri = p.triangles[n];
        for (double u : {tri.w1.u, tri.w2.u}) {
            canvas.line({u, std::max(view.vmin, 0.0)}, {u, view.vmax}, "#999999", 0.6, true);
        }
        draw_pair(tri.w1, tri.w2, "triangle-" + std::to_string(n));
    }

    out.svg = canvas.finish(p.title.empty() ? default_title(p) : p.title);
    return out;
}

std::string curves_csv(const std::vector<Polyline>& curves) {
    std::string s = "curve_id,T,u,v\n";
    for (const auto& pl : curves) {
        for (std::size_t i = 0; i < pl.points.size(); ++i) {
            s += format("%s,%.17g,%.17g,%.17g\n", pl.id.c_str(), pl.T[i], pl.points[i].u, pl.points[i].v);
        }
    }
    return s;
}

std::string raster_csv(const std::vector<Raster>& rasters) {
    std::string s = "i,j,u,v,class\n";
    for (const auto& r : rasters) {
        for (std::size_t j = 0; j < r.ny; ++j) {
            for (std::size_t i = 0; i < r.nx; ++i) {
                const Point c = r.center(i, j);
                s += format("%zu,%zu,%.17g,%.17g,%s\n", i, j, c.u, c.v, std::string(to_string(r.at(i, j))).c_str());
            }
        }
    }
    return s;
}

}  // namespace eph
