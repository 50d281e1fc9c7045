#pragma once

#include <array>
#include <span>

#include "eph/curve.hpp"
#include "eph/numbers.hpp"

namespace eph {

/// A real 2x2 matrix [[a, b], [c, d]] with ad - bc = 1 acting by
/// w -> (a w + b) / (c w + d).
class MoebiusMap {
public:
    static constexpr double kDeterminantTolerance = 1e-9;

    /// Throws Error(InvalidArgument) when |ad - bc - 1| > 1e-9.
    MoebiusMap(double a, double b, double c, double d);

    static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double c() const noexcept { return c_; }
    double d() const noexcept { return d_; }
    double det() const noexcept { return a_ * d_ - b_ * c_; }

    MoebiusMap inverse() const { return {d_, -b_, -c_, a_}; }

private:
    double a_, b_, c_, d_;
};

/// Matrix product g h, i.e. the map w -> g(h(w)). Renormalized by
/// sqrt(det) when rounding drifts the determinant by more than 1e-12.
MoebiusMap compose(const MoebiusMap& g, const MoebiusMap& h);

/// The one-parameter subgroups fixing the imaginary unit: rotations K(theta),
/// N'(t) = [[1, 0], [t, 1]] and boosts A'(alpha).
enum class SubgroupKind { K, Nprime, Aprime };

/// The geometry whose imaginary unit the subgroup fixes (K: complex,
/// N': dual, A': double numbers).
GeometryKind natural_geometry(SubgroupKind kind) noexcept;
SubgroupKind natural_subgroup(GeometryKind kind) noexcept;

MoebiusMap subgroup_element(SubgroupKind kind, double param);

/// (a w + b) / (c w + d) in w's number system. Throws
/// Error(PointAtInfinity) when c w + d is a zero divisor.
HNumber apply(const MoebiusMap& g, const HNumber& w);

/// The derivative of w -> g w at w, i.e. 1 / (c w + d)^2 in w's number
/// system, as a 2x2 real matrix acting on (du, dv).
using Matrix2 = std::array<std::array<double, 2>, 2>;
Matrix2 derivative(const MoebiusMap& g, const HNumber& w);

bool fixes_i(const MoebiusMap& g, GeometryKind kind);

/// The determinant-one form of w -> (w - u0) / v0 sending w0 to i.
/// Throws Error(NotInUpperHalfPlane) unless Im w0 > 0.
MoebiusMap normalizer_to_i(const HNumber& w0);

/// The linearised action at i of the subgroup element with the given
/// parameter: rotation by 2 theta, [[1, 0], [2t, 1]] or boost by 2 alpha.
///
/// These are the Jacobians of the inverse element: the derivative of
/// w -> subgroup_element(kind, param) w at i equals
/// jacobian_at_i(kind, -param).
Matrix2 jacobian_at_i(SubgroupKind kind, double param);

/// apply(subgroup_element(kind, p), w0) for each p, as a curve
/// parameterised by p. params must be strictly increasing.
PolyCurve orbit_points(SubgroupKind kind, const HNumber& w0, std::span<const double> params);

}  // namespace eph
