#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "eph/numbers.hpp"

namespace eph {

struct CurveSample {
    double T = 0.0;
    Point p;
    Point tangent;  // dp/dT
    // Left-sided tangent where two curves were joined with different
    // parameter speeds; absent means the curve is C1 here.
    std::optional<Point> tangent_in;

    Point incoming() const { return tangent_in.value_or(tangent); }
};

/// A sampled parametric curve T -> (u(T), v(T)) in the upper half-plane.
///
/// Samples have strictly increasing T and v > 0. Every sample carries a
/// tangent: either supplied by the producer (analytic curves, Moebius
/// images) or estimated from neighbouring samples with second-order
/// differences. Between samples the curve is the cubic Hermite
/// interpolant of positions and tangents.
class PolyCurve {
public:
    using PositionFn = std::function<Point(double)>;

    PolyCurve(GeometryKind kind, std::vector<CurveSample> samples);
    PolyCurve(GeometryKind kind, std::span<const double> params, std::span<const Point> points);

    /// n >= 2 evenly spaced parameters on [t0, t1].
    static PolyCurve sample(GeometryKind kind, const PositionFn& position, const PositionFn& velocity, double t0,
                            double t1, std::size_t n);
    static PolyCurve sample(GeometryKind kind, const PositionFn& position, double t0, double t1, std::size_t n);

    GeometryKind kind() const noexcept { return kind_; }
    std::size_t size() const noexcept { return samples_.size(); }
    std::span<const CurveSample> samples() const noexcept { return samples_; }
    const CurveSample& operator[](std::size_t i) const { return samples_[i]; }
    double t_begin() const { return samples_.front().T; }
    double t_end() const { return samples_.back().T; }

    Point position(double T) const;
    Point velocity(double T) const;

    /// n evenly spaced samples of the Hermite interpolant.
    PolyCurve resampled(std::size_t n) const;

    /// Joins b after a; b's parameters are shifted so it starts where a
    /// ends. b must start at a's end point.
    static PolyCurve concat(const PolyCurve& a, const PolyCurve& b);

private:
    std::size_t segment_index(double T) const;

    GeometryKind kind_;
    std::vector<CurveSample> samples_;
};

}  // namespace eph
