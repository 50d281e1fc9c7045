#pragma once

#include <string>
#include <vector>

#include "eph/scene.hpp"

namespace eph {

/// A sampled curve piece; T is the sampling parameter.
struct Polyline {
    std::string id;
    std::vector<double> T;
    std::vector<Point> points;
};

/// Visible pieces of the zero set of c in the upper half-plane near view.
std::vector<Polyline> trace_cycle(const Cycle& c, const BoundingBox& view, const std::string& id,
                                  std::size_t samples = 1201);

/// Orbit of the subgroup conjugated to fix o.center, through o.through.
std::vector<Polyline> trace_orbit(const OrbitObject& o, GeometryKind geometry, const BoundingBox& view,
                                  const std::string& id);

struct RenderedPanel {
    std::string svg;
    std::vector<Polyline> curves;
    std::vector<Raster> rasters;
};

/// Deterministic: identical panels give byte-identical output.
RenderedPanel render_panel(const Panel& panel, unsigned threads = 1);

/// `curve_id,T,u,v`, full precision.
std::string curves_csv(const std::vector<Polyline>& curves);
/// `i,j,u,v,class`, full precision; rasters are concatenated.
std::string raster_csv(const std::vector<Raster>& rasters);

}  // namespace eph
