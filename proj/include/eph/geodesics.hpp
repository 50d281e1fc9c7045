#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "eph/curve.hpp"
#include "eph/cycles.hpp"
#include "eph/distance.hpp"

namespace eph {

/// dv/du at w2 of the curve through w1 and w2 along which the core
/// distance is additive:
///   2 v2 / (u2 - u1) - sqrt|4 v1 v2 - flavor (u1 - u2)^2| / (u2 - u1).
/// Throws Error(VerticalPair) when u1 = u2.
double additivity_slope(Point w1, Point w2, ParabolicFlavor flavor);

struct GeodesicOdeOptions {
    ParabolicFlavor flavor;
    int direction = 1;   // +1 integrates towards u > 0, -1 towards u < 0
    double u_max = 3.0;  // stop at |u| = u_max
    double step = 1e-3;
    /// dv/du at i; the ODE is singular at u = 0 and leaves it free.
    double initial_slope = 0.0;
    double error_limit = 1e-6;
};

/// Integrates dv/du = additivity_slope(i, (u, v)) from i outward with
/// classical Runge-Kutta, starting off the singular point with the series
/// v = 1 + c1 u + (flavor + c1^2) u^2 / 4. The curve is parameterised by
/// |u|. Throws Error(StepTooLarge) when the step-doubling error estimate
/// exceeds options.error_limit, Error(InvalidArgument) for step <= 0.
PolyCurve integrate_geodesic(const GeodesicOdeOptions& options);

struct FamilyFit {
    double t = 0.0;
    double max_residual = 0.0;  // worst |eval_cycle(geodesic_family(flavor, t), p)|
};

/// Least-squares family parameter for the curve samples.
/// Throws Error(DegenerateFit) with fewer than 3 samples off u = 0.
FamilyFit fit_to_family(const PolyCurve& c, ParabolicFlavor flavor);

using Triple = std::array<Point, 3>;

/// max |d(w1, w3) - d(w1, w2) - d(w2, w3)| over the triples. Every point must
/// lie on c (canonical residual <= 1e-9, else Error(PointsNotOnCycle)) and
/// each triple must be ordered by u.
double additivity_check(const DistanceSpec& spec, const Cycle& c, std::span<const Triple> triples);

struct BoundingBox {
    double umin, umax, vmin, vmax;
};

/// Shortest path between z and w on a square grid with 16-neighbour
/// connectivity, edges weighted by the metric integrated with Simpson's
/// rule. Only the elliptic metric is supported; the parabolic one makes
/// vertical edges free and the hyperbolic one is indefinite
/// (Error(UnsupportedGeometry)). resolution >= 64 nodes along the longer
/// box side.
double grid_shortest_path(GeometryKind kind, Point z, Point w, std::size_t resolution,
                          std::optional<BoundingBox> box = std::nullopt);

enum class TriangleClass { StrictTriangle, ReverseTriangle, Equality, OutsideStrip, Degenerate };
std::string_view to_string(TriangleClass c) noexcept;

inline constexpr double kEqualityBand = 1e-9;

enum class GeodesicBranch { Connecting, Outer };

/// The geodesic through w1, w2 on the requested branch; Outer falls back to
/// the connecting one for a double root.
PairGeodesic select_geodesic(Point w1, Point w2, ParabolicFlavor flavor,
                             GeodesicBranch branch = GeodesicBranch::Connecting);

/// StrictTriangle when d(w1, w2) < d(w1, z) + d(z, w2), ReverseTriangle
/// when >, Equality within kEqualityBand. No strip test. Degenerate when
/// a distance is undefined (asin beyond its domain).
TriangleClass compare_triangle(const DistanceSpec& spec, Point w1, Point w2, Point z);

/// compare_triangle restricted to the open strip Re w1 < u < Re w2.
/// Points within `band` (vertically) of the chosen geodesic are Equality.
/// Needs a parabolic spec and Re w1 < Re w2.
TriangleClass classify_triangle(const DistanceSpec& spec, Point w1, Point w2, Point z,
                                GeodesicBranch branch = GeodesicBranch::Connecting, double band = 0.0);

struct RasterOptions {
    /// false: cells outside the strip are OutsideStrip. true: they are
    /// compared as well, which shows the whole reverse-triangle region.
    bool whole_plane = false;
    /// Vertical half-width of the geodesic bands; < 0 means half a cell.
    double band = -1.0;
    unsigned threads = 1;
};

/// The per-cell rule of region_raster for a single point.
TriangleClass raster_class(const DistanceSpec& spec, Point w1, Point w2, Point z, bool whole_plane, double band);

struct Raster {
    BoundingBox box;
    std::size_t nx = 0, ny = 0;
    double band = 0.0;
    std::vector<TriangleClass> cells;  // row j (from the bottom) major

    Point center(std::size_t i, std::size_t j) const;
    TriangleClass at(std::size_t i, std::size_t j) const { return cells[j * nx + i]; }
};

/// Classifies every cell centre. The connecting geodesic is an Equality
/// band inside the strip and the outer one outside it; together they bound
/// the reverse-triangle region.
Raster region_raster(const DistanceSpec& spec, Point w1, Point w2, const BoundingBox& box, std::size_t nx,
                     std::size_t ny, const RasterOptions& options = {});

}  // namespace eph
