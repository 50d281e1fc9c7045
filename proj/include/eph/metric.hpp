#pragma once

#include "eph/curve.hpp"
#include "eph/numbers.hpp"

namespace eph {

/// Coefficients of E du^2 + F du dv + G dv^2.
struct MetricForm {
    double E = 0.0;
    double F = 0.0;
    double G = 0.0;
};

/// The invariant metric (du^2 - sigma dv^2) / v^2 at w.
MetricForm metric_at(Point w, GeometryKind kind);

struct LengthOptions {
    /// Integrate sqrt(sigma dv^2 - du^2) / v instead; meaningful for
    /// time-like curves in the hyperbolic case.
    bool timelike = false;
    double relative_tolerance = 1e-8;
};

/// Invariant length of the curve, integrated segment by segment over its
/// Hermite interpolant with adaptive Simpson refinement.
///
/// Throws Error(ImaginaryLength) when the integrand radicand is negative at
/// a sample, Error(InsufficientSamples) for fewer than two samples.
double curve_length(const PolyCurve& c, const LengthOptions& options = {});

struct ElResidual {
    double r1 = 0.0;  // d/dT (u' / v^2)
    double r2 = 0.0;  // d/dT (sigma v' / v^2) - (u'^2 - sigma v'^2) / v^3
};

/// Residuals of the Euler-Lagrange equations of the invariant metric at
/// the sample nearest to T, by central differences on the curve's own
/// samples. Needs two samples on either side.
ElResidual el_residual(const PolyCurve& c, double T);

/// Closed form of the integral of dt / (a t^2 + b t + c) over [t0, t1],
/// i.e. the sigma = 0 length along the graph v = a t^2 + b t + c.
/// Throws Error(PoleOnSegment) when the denominator vanishes on the interval.
double parabola_segment_length(double a, double b, double c, double t0, double t1);

}  // namespace eph
