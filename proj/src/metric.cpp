#include "eph/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "eph/error.hpp"

namespace eph {

MetricForm metric_at(Point w, GeometryKind kind) {
    if (!(w.v > 0.0)) {
        throw Error(ErrorCode::NotInUpperHalfPlane, "metric is defined for v > 0");
    }
    const double inv = 1.0 / (w.v * w.v);
    return {inv, 0.0, -sigma(kind) * inv};
}

namespace {

struct LengthIntegrand {
    const PolyCurve& curve;
    double s;     // sigma
    double sign;  // +1 space-like, -1 time-like

    double radicand(Point d) const { return sign * (d.u * d.u - s * d.v * d.v); }

    double operator()(double T) const {
        const Point p = curve.position(T);
        const Point d = curve.velocity(T);
        // radicand sign is checked at the samples; interpolation roundoff
        // in between is clamped
        return std::sqrt(std::max(0.0, radicand(d))) / p.v;
    }
};

template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
    const double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15.0 * tol) {
        return left + right + diff / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace

double curve_length(const PolyCurve& c, const LengthOptions& options) {
    if (c.size() < 2) {
        throw Error(ErrorCode::InsufficientSamples, "curve length needs at least two samples");
    }
    const LengthIntegrand f{c, static_cast<double>(sigma(c.kind())), options.timelike ? -1.0 : 1.0};
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Point d = c[i].tangent;
        const double scale = d.u * d.u + d.v * d.v;
        if (f.radicand(d) < -1e-12 * scale || f.radicand(c[i].incoming()) < -1e-12 * scale) {
            throw Error(ErrorCode::ImaginaryLength,
                        std::string(options.timelike ? "space-like" : "time-like") + " tangent at sample " +
                            std::to_string(i));
        }
    }

    // A coarse pass sets the absolute tolerance for the refinement.
    double coarse = 0.0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        const double a = c[i].T, b = c[i + 1].T;
        coarse += (b - a) / 6.0 * (f(a) + 4 * f(0.5 * (a + b)) + f(b));
    }
    const double total_tol = options.relative_tolerance * std::max(std::abs(coarse), 1e-300) * 1e-2;

    double total = 0.0;
    const double span = c.t_end() - c.t_begin();
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        const double a = c[i].T, b = c[i + 1].T;
        const double m = 0.5 * (a + b);
        // right endpoint evaluated inside the segment: joins may have one-sided tangents
        const double fa = f(a), fm = f(m), fb = f(std::nextafter(b, a));
        const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
        total += adaptive_simpson(f, a, b, fa, fm, fb, whole, total_tol * (b - a) / span, 40);
    }
    return total;
}

ElResidual el_residual(const PolyCurve& c, double T) {
    const auto samples = c.samples();
    if (samples.size() < 5) {
        throw Error(ErrorCode::InsufficientSamples, "Euler-Lagrange residual needs at least 5 samples");
    }
    auto it = std::lower_bound(samples.begin(), samples.end(), T,
                               [](const CurveSample& s, double x) { return s.T < x; });
    std::size_t i = static_cast<std::size_t>(it - samples.begin());
    if (i == samples.size() || (i > 0 && T - samples[i - 1].T < samples[i].T - T)) {
        --i;
    }
    if (i < 2 || i + 2 >= samples.size()) {
        throw Error(ErrorCode::InsufficientSamples, "T needs two samples on either side");
    }
    const double s = sigma(c.kind());

    // first derivative at sample j from its neighbours
    auto deriv = [&](std::size_t j) {
        const auto& a = samples[j - 1];
        const auto& m = samples[j];
        const auto& b = samples[j + 1];
        const double h1 = m.T - a.T, h2 = b.T - m.T;
        const double wa = -h2 / (h1 * (h1 + h2));
        const double wm = (h2 - h1) / (h1 * h2);
        const double wb = h1 / (h2 * (h1 + h2));
        return Point{wa * a.p.u + wm * m.p.u + wb * b.p.u, wa * a.p.v + wm * m.p.v + wb * b.p.v};
    };
    auto q1 = [&](std::size_t j) {
        const double v = samples[j].p.v;
        return deriv(j).u / (v * v);
    };
    auto q2 = [&](std::size_t j) {
        const double v = samples[j].p.v;
        return s * deriv(j).v / (v * v);
    };
    auto d_dt = [&](auto&& q) {
        const double h1 = samples[i].T - samples[i - 1].T, h2 = samples[i + 1].T - samples[i].T;
        const double wa = -h2 / (h1 * (h1 + h2));
        const double wm = (h2 - h1) / (h1 * h2);
        const double wb = h1 / (h2 * (h1 + h2));
        return wa * q(i - 1) + wm * q(i) + wb * q(i + 1);
    };
    const Point d = deriv(i);
    const double v = samples[i].p.v;
    return {d_dt(q1), d_dt(q2) - (d.u * d.u - s * d.v * d.v) / (v * v * v)};
}

double parabola_segment_length(double a, double b, double c, double t0, double t1) {
    if (t1 < t0) {
        return -parabola_segment_length(a, b, c, t1, t0);
    }
    auto den = [&](double t) { return (a * t + b) * t + c; };
    auto pole_at = [&](double r) {
        return r >= t0 && r <= t1;
    };
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (scale == 0.0) {
        throw Error(ErrorCode::PoleOnSegment, "denominator is identically zero");
    }
    if (std::abs(den(t0)) <= 1e-14 * scale || std::abs(den(t1)) <= 1e-14 * scale) {
        throw Error(ErrorCode::PoleOnSegment, "denominator vanishes at an endpoint");
    }

    if (a == 0.0) {
        if (b == 0.0) {
            return (t1 - t0) / c;
        }
        if (pole_at(-c / b)) {
            throw Error(ErrorCode::PoleOnSegment, "linear denominator has a root on the interval");
        }
        return std::log(std::abs(den(t1) / den(t0))) / b;
    }

    const double disc = b * b - 4 * a * c;
    if (disc < 0.0) {
        const double q = std::sqrt(-disc);
        // arctangent case; the difference of two arctangents is taken in one
        // step to avoid cancellation
        const double x1 = (2 * a * t1 + b) / q, x0 = (2 * a * t0 + b) / q;
        return 2.0 / q * std::atan2(x1 - x0, 1.0 + x1 * x0);
    }
    if (disc == 0.0) {
        const double r = -b / (2 * a);
        if (pole_at(r)) {
            throw Error(ErrorCode::PoleOnSegment, "double root on the interval");
        }
        // 1 / (a (t - r)^2)
        return (1.0 / (t0 - r) - 1.0 / (t1 - r)) / a;
    }
    const double q = std::sqrt(disc);
    const double r1 = (-b - q) / (2 * a), r2 = (-b + q) / (2 * a);
    if (pole_at(r1) || pole_at(r2)) {
        throw Error(ErrorCode::PoleOnSegment, "denominator has a root on the interval");
    }
    // 1/q log |(2 a t + b - q) / (2 a t + b + q)|
    auto F = [&](double t) { return std::log(std::abs((2 * a * t + b - q) / (2 * a * t + b + q))) / q; };
    return F(t1) - F(t0);
}

}  // namespace eph
