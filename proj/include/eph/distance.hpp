#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eph/cycles.hpp"
#include "eph/numbers.hpp"

namespace eph {

/// A strictly increasing relabelling h with h(0) = 0, applied to the core
/// distance. Any such h gives another invariant distance.
class Relabel {
public:
    enum class Kind { Identity, Scale, SinhInv, SinInv, Table };

    static Relabel identity() { return Relabel(Kind::Identity); }
    /// h(t) = c t, c > 0. Covers constant prefactor conventions.
    static Relabel scaled(double c);
    static Relabel doubled() { return scaled(2.0); }
    static Relabel sinh_inv() { return Relabel(Kind::SinhInv); }
    /// asin on [0, 1].
    static Relabel sin_inv() { return Relabel(Kind::SinInv); }
    /// Piecewise-linear through (xs[i], ys[i]); xs strictly increasing,
    /// ys increasing up to 1e-12 slack. Evaluating past xs.back() throws
    /// Error(DomainExceeded).
    static Relabel table(std::vector<double> xs, std::vector<double> ys);

    Kind kind() const noexcept { return kind_; }
    double operator()(double t) const;
    /// Supremum of the domain (may be +inf).
    double domain_max() const;
    std::string name() const;

    /// Samples 10^3 points of [0, min(domain_max, cap)) and throws
    /// Error(NonMonotoneSamples) unless h is strictly increasing with h(0) = 0.
    void validate(double cap = 10.0) const;

private:
    explicit Relabel(Kind kind) : kind_(kind) {}

    Kind kind_;
    double scale_ = 1.0;
    std::vector<double> xs_, ys_;
};

enum class IntervalType { SpaceLike, TimeLike, LightLike };
std::string_view to_string(IntervalType t) noexcept;

struct DistanceSpec {
    GeometryKind geometry = GeometryKind::Parabolic;
    ParabolicFlavor flavor;  // only used for the parabolic geometry
    Relabel label = Relabel::identity();
};

/// sign of Re[z - w]^2 - Im[z - w]^2, LightLike within 1e-12.
IntervalType interval_type(const HNumber& z, const HNumber& w);

/// F(z, w) = sqrt(| |z - w|^2_sigma |) / sqrt(Im z Im w).
/// Throws Error(NotInUpperHalfPlane) unless both imaginary parts are > 0.
double invariant_F(const HNumber& z, const HNumber& w);

/// asinh t (flavor -1), 2t (flavor 0), asin t (flavor +1).
/// Throws Error(DomainExceeded) for flavor +1 and |t| > 1.
double sin_inv_flavor(ParabolicFlavor flavor, double t);

struct DistanceResult {
    double value = 0.0;  // h(core)
    double core = 0.0;   // sin^-1_flavor(F / 2)
    std::optional<IntervalType> interval;  // hyperbolic geometry only
    bool vertical_degenerate = false;      // parabolic pair on one vertical line
};

/// Invariant distance h(sin^-1_s(F/2)) with s = -1 for the elliptic
/// geometry, the spec's flavor for the parabolic one, and +1 / -1 for
/// space-like / time-like hyperbolic pairs. Light-like pairs give 0.
DistanceResult distance(const DistanceSpec& spec, const HNumber& z, const HNumber& w);
DistanceResult distance(const DistanceSpec& spec, Point z, Point w);

/// w -> (2w - e) / (e flavor w + 2) in dual numbers, flavor entering as a
/// real coefficient. w must be a dual number.
HNumber cayley(const HNumber& w, ParabolicFlavor flavor);
/// w -> (2w + e) / (2 - e flavor w).
HNumber cayley_inverse(const HNumber& w, ParabolicFlavor flavor);

/// Invariant distance between two points of the parabolic unit disc.
/// Throws Error(OutsideDisk) when 1 + 2v + flavor u^2 <= 0 for either point.
double disk_distance(ParabolicFlavor flavor, Point p1, Point p2);

struct DistanceSample {
    HNumber z;
    HNumber w;
    double f = 0.0;
};

struct MonotoneFit {
    Relabel h = Relabel::identity();  // piecewise-linear table
    bool monotone = true;
    /// Largest leave-one-out interpolation error over interior samples.
    double residual = 0.0;
    /// Largest |spec.label(core) - f| over the samples.
    double label_residual = 0.0;
};

/// Recovers h with f = h(core distance) from samples of an invariant
/// function f. Needs >= 10 distinct core values; throws
/// Error(NonMonotoneSamples) when f decreases as the core distance grows.
MonotoneFit relabeled_equals(std::span<const DistanceSample> samples, const DistanceSpec& spec);

}  // namespace eph
