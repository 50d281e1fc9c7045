#include "eph/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <thread>

#include "eph/error.hpp"
#include "eph/metric.hpp"

namespace eph {

double additivity_slope(Point w1, Point w2, ParabolicFlavor flavor) {
    const double du = w2.u - w1.u;
    if (du == 0.0) {
        throw Error(ErrorCode::VerticalPair, "slope is undefined for points on a vertical line");
    }
    const double radicand = 4 * w1.v * w2.v - flavor.value() * du * du;
    return (2 * w2.v - std::sqrt(std::abs(radicand))) / du;
}

PolyCurve integrate_geodesic(const GeodesicOdeOptions& o) {
    if (!(o.step > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "integration step must be positive");
    }
    if (o.direction != 1 && o.direction != -1) {
        throw Error(ErrorCode::InvalidArgument, "direction must be +1 or -1");
    }
    if (!(o.u_max > o.step)) {
        throw Error(ErrorCode::InvalidArgument, "u_max must exceed the step");
    }
    const double dir = o.direction;
    const Point start{0.0, 1.0};
    auto slope = [&](double u, double v) { return additivity_slope(start, {u, v}, o.flavor); };

    const double c1 = o.initial_slope;
    const double c2 = (o.flavor.value() + c1 * c1) / 4;

    std::vector<CurveSample> samples;
    samples.push_back({0.0, start, {1.0, dir * c1}, std::nullopt});
    double u = dir * o.step;
    double v = 1 + c1 * u + c2 * u * u;
    samples.push_back({std::abs(u), {u, v}, {1.0, dir * slope(u, v)}, std::nullopt});

    auto rk4 = [&](double u0, double v0, double h) {
        const double k1 = slope(u0, v0);
        const double k2 = slope(u0 + h / 2, v0 + h / 2 * k1);
        const double k3 = slope(u0 + h / 2, v0 + h / 2 * k2);
        const double k4 = slope(u0 + h, v0 + h * k3);
        return v0 + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    };

    while (std::abs(u) < o.u_max - 1e-12) {
        const double h = dir * std::min(o.step, o.u_max - std::abs(u));
        const double full = rk4(u, v, h);
        const double half = rk4(u + h / 2, rk4(u, v, h / 2), h / 2);
        const double err = std::abs(half - full) / 15.0;
        if (!(err <= o.error_limit) || !std::isfinite(half)) {
            throw Error(ErrorCode::StepTooLarge, "local error estimate exceeds the limit");
        }
        u += h;
        v = half + (half - full) / 15.0;
        if (!(v > 0.0)) {
            throw Error(ErrorCode::NotInUpperHalfPlane, "integrated geodesic reached the real axis");
        }
        // dp/dT with T = |u|
        samples.push_back({std::abs(u), {u, v}, {dir, dir * slope(u, v)}, std::nullopt});
    }
    // tangent at i: direction and the prescribed slope
    samples.front().tangent = {dir, dir * c1};
    return PolyCurve(GeometryKind::Parabolic, std::move(samples));
}

namespace {

// Real roots of a x^3 + b x^2 + c x + d with a != 0.
std::vector<double> real_cubic_roots(double a, double b, double c, double d) {
    const double p2 = b / a, p1 = c / a, p0 = d / a;
    const double q = (3 * p1 - p2 * p2) / 9;
    const double r = (9 * p2 * p1 - 27 * p0 - 2 * p2 * p2 * p2) / 54;
    const double disc = q * q * q + r * r;
    std::vector<double> roots;
    if (disc > 0) {
        const double s = std::cbrt(r + std::sqrt(disc));
        const double t = std::cbrt(r - std::sqrt(disc));
        roots.push_back(s + t - p2 / 3);
    } else {
        const double rho = std::sqrt(-q * q * q);
        const double theta = rho == 0.0 ? 0.0 : std::acos(std::clamp(r / rho, -1.0, 1.0));
        const double m = 2 * std::sqrt(-q);
        for (int k = 0; k < 3; ++k) {
            roots.push_back(m * std::cos((theta + 2 * M_PI * k) / 3) - p2 / 3);
        }
    }
    for (double& x : roots) {
        for (int it = 0; it < 3; ++it) {
            const double f = ((a * x + b) * x + c) * x + d;
            const double df = (3 * a * x + 2 * b) * x + c;
            if (df == 0.0) {
                break;
            }
            x -= f / df;
        }
    }
    return roots;
}

}  // namespace

FamilyFit fit_to_family(const PolyCurve& c, ParabolicFlavor flavor) {
    // eval_cycle(geodesic_family(flavor, t), p) = A t^2 + B t + C
    double c3 = 0, c2 = 0, c1 = 0, c0 = 0;
    std::size_t off_axis = 0;
    for (const auto& s : c.samples()) {
        const double u = s.p.u, v = s.p.v;
        if (std::abs(u) > 1e-12) {
            ++off_axis;
        }
        const double A = 4 * u * u, B = -8 * u, C = flavor.value() * u * u - 4 * v + 4;
        c3 += 2 * A * A;
        c2 += 3 * A * B;
        c1 += B * B + 2 * A * C;
        c0 += B * C;
    }
    if (off_axis < 3) {
        throw Error(ErrorCode::DegenerateFit, "need at least 3 samples off u = 0");
    }
    auto sum_sq = [&](double t) {
        double acc = 0;
        for (const auto& s : c.samples()) {
            const double e = eval_cycle(geodesic_family(flavor, t), s.p);
            acc += e * e;
        }
        return acc;
    };
    FamilyFit best{0.0, std::numeric_limits<double>::infinity()};
    double best_ss = std::numeric_limits<double>::infinity();
    for (double t : real_cubic_roots(c3, c2, c1, c0)) {
        const double ss = sum_sq(t);
        if (ss < best_ss) {
            best_ss = ss;
            best.t = t;
        }
    }
    best.max_residual = 0.0;
    const Cycle member = geodesic_family(flavor, best.t);
    for (const auto& s : c.samples()) {
        best.max_residual = std::max(best.max_residual, std::abs(eval_cycle(member, s.p)));
    }
    return best;
}

double additivity_check(const DistanceSpec& spec, const Cycle& c, std::span<const Triple> triples) {
    double worst = 0.0;
    for (const auto& tr : triples) {
        for (const Point& p : tr) {
            if (!(std::abs(cycle_residual(c, p)) <= 1e-9)) {
                throw Error(ErrorCode::PointsNotOnCycle, "triple point is not on the cycle");
            }
        }
        if (!(tr[0].u <= tr[1].u && tr[1].u <= tr[2].u)) {
            throw Error(ErrorCode::InvalidArgument, "triple must be ordered by u");
        }
        const double d13 = distance(spec, tr[0], tr[2]).value;
        const double d12 = distance(spec, tr[0], tr[1]).value;
        const double d23 = distance(spec, tr[1], tr[2]).value;
        worst = std::max(worst, std::abs(d13 - d12 - d23));
    }
    return worst;
}

double grid_shortest_path(GeometryKind kind, Point z, Point w, std::size_t resolution,
                          std::optional<BoundingBox> box_opt) {
    if (kind != GeometryKind::Elliptic) {
        throw Error(ErrorCode::UnsupportedGeometry, "grid oracle needs a positive definite metric");
    }
    if (resolution < 64) {
        throw Error(ErrorCode::InvalidArgument, "grid resolution must be at least 64");
    }
    if (!(z.v > 0.0) || !(w.v > 0.0)) {
        throw Error(ErrorCode::NotInUpperHalfPlane, "grid endpoints must have v > 0");
    }
    BoundingBox box;
    if (box_opt) {
        box = *box_opt;
    } else {
        // The geodesic arc stays within the u-range of its endpoints, above
        // the lower endpoint and below max(v) + |du|.
        const double du = std::abs(z.u - w.u);
        const double vlo = std::min(z.v, w.v), vhi = std::max(z.v, w.v);
        const double margin = 0.25 * std::max({du, vhi - vlo, vlo});
        box = {std::min(z.u, w.u) - margin, std::max(z.u, w.u) + margin, 0.8 * vlo, 1.1 * (vhi + du)};
    }
    auto inside = [&](Point p) { return p.u >= box.umin && p.u <= box.umax && p.v >= box.vmin && p.v <= box.vmax; };
    if (!(box.vmin > 0.0) || !inside(z) || !inside(w)) {
        throw Error(ErrorCode::InvalidArgument, "endpoints must lie in a box inside the upper half-plane");
    }

    const double h = std::max(box.umax - box.umin, box.vmax - box.vmin) / static_cast<double>(resolution - 1);
    // node (i, j) sits at z + h (i - i0, j - j0) so that z is a node
    const auto i0 = static_cast<long>(std::floor((z.u - box.umin) / h));
    const auto j0 = static_cast<long>(std::floor((z.v - box.vmin) / h));
    const long nx = i0 + static_cast<long>(std::floor((box.umax - z.u) / h)) + 1;
    const long ny = j0 + static_cast<long>(std::floor((box.vmax - z.v) / h)) + 1;
    auto node_v = [&](long j) { return z.v + h * static_cast<double>(j - j0); };
    const long iw = std::clamp(i0 + std::lround((w.u - z.u) / h), 0L, nx - 1);
    const long jw = std::clamp(j0 + std::lround((w.v - z.v) / h), 0L, ny - 1);

    static constexpr int kOffsets[16][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1}, {1, 1},  {1, -1},
                                            {-1, 1}, {-1, -1}, {1, 2},  {2, 1},  {-1, 2}, {-2, 1},
                                            {1, -2}, {2, -1}, {-1, -2}, {-2, -1}};
    const std::size_t count = static_cast<std::size_t>(nx * ny);
    std::vector<double> dist(count, std::numeric_limits<double>::infinity());
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    const std::size_t source = static_cast<std::size_t>(j0 * nx + i0);
    const std::size_t target = static_cast<std::size_t>(jw * nx + iw);
    dist[source] = 0.0;
    queue.push({0.0, source});
    while (!queue.empty()) {
        const auto [d, idx] = queue.top();
        queue.pop();
        if (d > dist[idx]) {
            continue;
        }
        if (idx == target) {
            break;
        }
        const long i = static_cast<long>(idx) % nx, j = static_cast<long>(idx) / nx;
        const double v0 = node_v(j);
        for (const auto& off : kOffsets) {
            const long ii = i + off[0], jj = j + off[1];
            if (ii < 0 || jj < 0 || ii >= nx || jj >= ny) {
                continue;
            }
            const double v1 = node_v(jj);
            const double len = h * std::hypot(off[0], off[1]);
            // Simpson's rule for the integral of ds / v along the edge
            const double weight = len * (1 / v0 + 4 / (0.5 * (v0 + v1)) + 1 / v1) / 6;
            const std::size_t n = static_cast<std::size_t>(jj * nx + ii);
            if (d + weight < dist[n]) {
                dist[n] = d + weight;
                queue.push({dist[n], n});
            }
        }
    }
    return dist[target];
}

std::string_view to_string(TriangleClass c) noexcept {
    switch (c) {
        case TriangleClass::StrictTriangle: return "strict";
        case TriangleClass::ReverseTriangle: return "reverse";
        case TriangleClass::Equality: return "equality";
        case TriangleClass::OutsideStrip: return "outside";
        case TriangleClass::Degenerate: return "degenerate";
    }
    return "?";
}

PairGeodesic select_geodesic(Point w1, Point w2, ParabolicFlavor flavor, GeodesicBranch branch) {
    const auto all = geodesics_through_pair(w1, w2, flavor);
    if (branch == GeodesicBranch::Outer && all.size() > 1) {
        return all[1];
    }
    return all[0];
}

TriangleClass compare_triangle(const DistanceSpec& spec, Point w1, Point w2, Point z) {
    double d12, d1z, dz2;
    try {
        d12 = distance(spec, w1, w2).value;
        d1z = distance(spec, w1, z).value;
        dz2 = distance(spec, z, w2).value;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::DomainExceeded) {
            return TriangleClass::Degenerate;
        }
        throw;
    }
    const double diff = d12 - (d1z + dz2);
    if (std::abs(diff) <= kEqualityBand) {
        return TriangleClass::Equality;
    }
    return diff < 0 ? TriangleClass::StrictTriangle : TriangleClass::ReverseTriangle;
}

namespace {

void require_triangle_setup(const DistanceSpec& spec, Point w1, Point w2) {
    if (spec.geometry != GeometryKind::Parabolic) {
        throw Error(ErrorCode::UnsupportedGeometry, "triangle classification is for the parabolic geometry");
    }
    if (!(w1.u < w2.u)) {
        throw Error(ErrorCode::InvalidArgument, "need Re w1 < Re w2");
    }
}

bool near_geodesic(const Cycle& geodesic, Point z, double band) {
    if (band <= 0.0) {
        return false;
    }
    const auto h = parabola_height(geodesic, z.u);
    return h && std::abs(z.v - *h) <= band;
}

TriangleClass classify_point(const DistanceSpec& spec, Point w1, Point w2, Point z, const Cycle& inner,
                             const Cycle& outer, bool whole_plane, double band) {
    if (z.u == w1.u || z.u == w2.u) {
        return TriangleClass::Degenerate;
    }
    const bool in_strip = z.u > w1.u && z.u < w2.u;
    if (!in_strip && !whole_plane) {
        return TriangleClass::OutsideStrip;
    }
    if (near_geodesic(in_strip ? inner : outer, z, band)) {
        return TriangleClass::Equality;
    }
    return compare_triangle(spec, w1, w2, z);
}

}  // namespace

TriangleClass classify_triangle(const DistanceSpec& spec, Point w1, Point w2, Point z, GeodesicBranch branch,
                                double band) {
    require_triangle_setup(spec, w1, w2);
    const Cycle g = select_geodesic(w1, w2, spec.flavor, branch).cycle;
    return classify_point(spec, w1, w2, z, g, g, false, band);
}

TriangleClass raster_class(const DistanceSpec& spec, Point w1, Point w2, Point z, bool whole_plane, double band) {
    require_triangle_setup(spec, w1, w2);
    const Cycle inner = select_geodesic(w1, w2, spec.flavor, GeodesicBranch::Connecting).cycle;
    const Cycle outer = select_geodesic(w1, w2, spec.flavor, GeodesicBranch::Outer).cycle;
    return classify_point(spec, w1, w2, z, inner, outer, whole_plane, band);
}

Point Raster::center(std::size_t i, std::size_t j) const {
    const double dx = (box.umax - box.umin) / static_cast<double>(nx);
    const double dy = (box.vmax - box.vmin) / static_cast<double>(ny);
    return {box.umin + (static_cast<double>(i) + 0.5) * dx, box.vmin + (static_cast<double>(j) + 0.5) * dy};
}

Raster region_raster(const DistanceSpec& spec, Point w1, Point w2, const BoundingBox& box, std::size_t nx,
                     std::size_t ny, const RasterOptions& options) {
    require_triangle_setup(spec, w1, w2);
    if (nx == 0 || ny == 0 || !(box.umax > box.umin) || !(box.vmax > box.vmin) || box.vmin < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "raster needs a nonempty box in the upper half-plane");
    }
    Raster r{box, nx, ny, 0.0, std::vector<TriangleClass>(nx * ny, TriangleClass::Degenerate)};
    r.band = options.band < 0 ? 0.5 * (box.vmax - box.vmin) / static_cast<double>(ny) : options.band;
    const Cycle inner = select_geodesic(w1, w2, spec.flavor, GeodesicBranch::Connecting).cycle;
    const Cycle outer = select_geodesic(w1, w2, spec.flavor, GeodesicBranch::Outer).cycle;

    auto rows = [&](std::size_t j0, std::size_t j1) {
        for (std::size_t j = j0; j < j1; ++j) {
            for (std::size_t i = 0; i < nx; ++i) {
                r.cells[j * nx + i] = classify_point(spec, w1, w2, r.center(i, j), inner, outer,
                                                     options.whole_plane, r.band);
            }
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, ny);
    if (threads == 1) {
        rows(0, ny);
        return r;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (ny + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t j0 = t * chunk, j1 = std::min(ny, j0 + chunk);
        if (j0 < j1) {
            pool.emplace_back(rows, j0, j1);
        }
    }
    for (auto& th : pool) {
        th.join();
    }
    return r;
}

}  // namespace eph
