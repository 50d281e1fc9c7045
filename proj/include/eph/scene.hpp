#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eph/cycles.hpp"
#include "eph/geodesics.hpp"
#include "eph/moebius.hpp"
#include "eph/numbers.hpp"

namespace eph {

enum class HyperbolicFamily { SpaceLike, TimeLike, Both };

/// Orbit of the subgroup conjugated to fix `center`, through `through`.
struct OrbitObject {
    Point center{0.0, 1.0};
    Point through{0.0, 2.0};
    std::optional<SubgroupKind> subgroup;  // default: the natural one of the panel geometry
    std::optional<double> from, to;
    std::size_t count = 0;  // 0: default for the subgroup
};

/// Both geodesics through two points (parabolic panels).
struct PairObject {
    Point w1, w2;
};

/// Triangle-inequality raster for w1, w2 (parabolic panels).
struct TriangleObject {
    Point w1, w2;
    std::size_t nx = 200, ny = 200;
    bool whole_plane = true;
};

struct Panel {
    std::string title;
    GeometryKind geometry = GeometryKind::Parabolic;
    ParabolicFlavor flavor;
    HyperbolicFamily family = HyperbolicFamily::Both;
    BoundingBox viewport{-2.0, 2.0, 0.0, 3.0};
    int width = 480, height = 360;
    std::vector<double> geodesics;  // family parameters t
    std::vector<OrbitObject> orbits;
    std::vector<PairObject> pairs;
    std::vector<TriangleObject> triangles;
};

struct Scene {
    std::vector<Panel> panels;
};

/// Line-oriented format: `[panel]` opens a panel, then `key = value` lines;
/// `#` starts a comment. List keys (geodesics, orbit, pair, triangle) may
/// repeat and accumulate. Malformed input throws Error(InvalidArgument)
/// naming the line.
Scene parse_scene(std::istream& in);
Scene parse_scene_file(const std::string& path);

}  // namespace eph
