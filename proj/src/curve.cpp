#include "eph/curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eph/error.hpp"

namespace eph {

namespace {

void validate(const std::vector<CurveSample>& samples) {
    if (samples.empty()) {
        throw Error(ErrorCode::InsufficientSamples, "curve has no samples");
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (!std::isfinite(s.T) || !std::isfinite(s.p.u) || !std::isfinite(s.p.v)) {
            throw Error(ErrorCode::InvalidArgument, "non-finite curve sample " + std::to_string(i));
        }
        if (!(s.p.v > 0.0)) {
            throw Error(ErrorCode::NotInUpperHalfPlane, "curve sample " + std::to_string(i) + " has v <= 0");
        }
        if (i > 0 && !(s.T > samples[i - 1].T)) {
            throw Error(ErrorCode::InvalidArgument, "curve parameters must be strictly increasing");
        }
    }
}

// Second-order derivative estimate on a nonuniform grid.
std::vector<Point> estimate_tangents(std::span<const double> t, std::span<const Point> p) {
    const std::size_t n = t.size();
    std::vector<Point> d(n);
    if (n == 1) {
        return d;
    }
    if (n == 2) {
        const double h = t[1] - t[0];
        d[0] = d[1] = {(p[1].u - p[0].u) / h, (p[1].v - p[0].v) / h};
        return d;
    }
    auto three_point = [&](std::size_t a, std::size_t b, std::size_t c, double at) {
        // derivative at `at` of the quadratic through samples a, b, c
        const double ta = t[a], tb = t[b], tc = t[c];
        const double wa = (2 * at - tb - tc) / ((ta - tb) * (ta - tc));
        const double wb = (2 * at - ta - tc) / ((tb - ta) * (tb - tc));
        const double wc = (2 * at - ta - tb) / ((tc - ta) * (tc - tb));
        return Point{wa * p[a].u + wb * p[b].u + wc * p[c].u, wa * p[a].v + wb * p[b].v + wc * p[c].v};
    };
    d[0] = three_point(0, 1, 2, t[0]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        d[i] = three_point(i - 1, i, i + 1, t[i]);
    }
    d[n - 1] = three_point(n - 3, n - 2, n - 1, t[n - 1]);
    return d;
}

}  // namespace

PolyCurve::PolyCurve(GeometryKind kind, std::vector<CurveSample> samples) : kind_(kind), samples_(std::move(samples)) {
    validate(samples_);
}

PolyCurve::PolyCurve(GeometryKind kind, std::span<const double> params, std::span<const Point> points) : kind_(kind) {
    if (params.size() != points.size()) {
        throw Error(ErrorCode::InvalidArgument, "parameter and point counts differ");
    }
    samples_.resize(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        samples_[i].T = params[i];
        samples_[i].p = points[i];
    }
    validate(samples_);
    const auto tangents = estimate_tangents(params, points);
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        samples_[i].tangent = tangents[i];
    }
}

PolyCurve PolyCurve::sample(GeometryKind kind, const PositionFn& position, const PositionFn& velocity, double t0,
                            double t1, std::size_t n) {
    if (n < 2 || !(t1 > t0)) {
        throw Error(ErrorCode::InvalidArgument, "sampling needs n >= 2 and t1 > t0");
    }
    std::vector<CurveSample> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double T = i + 1 == n ? t1 : t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n - 1);
        s[i] = {T, position(T), velocity(T), std::nullopt};
    }
    return PolyCurve(kind, std::move(s));
}

PolyCurve PolyCurve::sample(GeometryKind kind, const PositionFn& position, double t0, double t1, std::size_t n) {
    if (n < 2 || !(t1 > t0)) {
        throw Error(ErrorCode::InvalidArgument, "sampling needs n >= 2 and t1 > t0");
    }
    std::vector<double> t(n);
    std::vector<Point> p(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = i + 1 == n ? t1 : t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n - 1);
        p[i] = position(t[i]);
    }
    return PolyCurve(kind, t, p);
}

std::size_t PolyCurve::segment_index(double T) const {
    if (samples_.size() < 2) {
        throw Error(ErrorCode::InsufficientSamples, "interpolation needs at least two samples");
    }
    auto it = std::upper_bound(samples_.begin(), samples_.end(), T,
                               [](double x, const CurveSample& s) { return x < s.T; });
    std::size_t i = it == samples_.begin() ? 0 : static_cast<std::size_t>(it - samples_.begin()) - 1;
    return std::min(i, samples_.size() - 2);
}

Point PolyCurve::position(double T) const {
    const std::size_t i = segment_index(T);
    const auto& a = samples_[i];
    const auto& b = samples_[i + 1];
    const double h = b.T - a.T;
    const double s = (T - a.T) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    const Point tb = b.incoming();
    return {h00 * a.p.u + h * h10 * a.tangent.u + h01 * b.p.u + h * h11 * tb.u,
            h00 * a.p.v + h * h10 * a.tangent.v + h01 * b.p.v + h * h11 * tb.v};
}

Point PolyCurve::velocity(double T) const {
    const std::size_t i = segment_index(T);
    const auto& a = samples_[i];
    const auto& b = samples_[i + 1];
    const double h = b.T - a.T;
    const double s = (T - a.T) / h;
    const double d00 = 6 * s * (s - 1) / h;
    const double d10 = (1 - s) * (1 - 3 * s);
    const double d01 = -d00;
    const double d11 = s * (3 * s - 2);
    const Point tb = b.incoming();
    return {d00 * a.p.u + d10 * a.tangent.u + d01 * b.p.u + d11 * tb.u,
            d00 * a.p.v + d10 * a.tangent.v + d01 * b.p.v + d11 * tb.v};
}

PolyCurve PolyCurve::resampled(std::size_t n) const {
    if (n < 2) {
        throw Error(ErrorCode::InvalidArgument, "resampling needs n >= 2");
    }
    const double t0 = t_begin();
    const double t1 = t_end();
    std::vector<CurveSample> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double T = i + 1 == n ? t1 : t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n - 1);
        s[i] = {T, position(T), velocity(T), std::nullopt};
    }
    return PolyCurve(kind_, std::move(s));
}

PolyCurve PolyCurve::concat(const PolyCurve& a, const PolyCurve& b) {
    if (a.kind() != b.kind()) {
        throw Error(ErrorCode::InvalidArgument, "cannot join curves of different geometries");
    }
    const Point end = a.samples_.back().p;
    const Point start = b.samples_.front().p;
    const double scale = std::max({1.0, std::abs(end.u), std::abs(end.v)});
    if (std::hypot(end.u - start.u, end.v - start.v) > 1e-12 * scale) {
        throw Error(ErrorCode::InvalidArgument, "curves do not join");
    }
    std::vector<CurveSample> s = a.samples_;
    s.back().tangent_in = s.back().incoming();
    s.back().tangent = b.samples_.front().tangent;
    const double shift = a.t_end() - b.t_begin();
    for (std::size_t i = 1; i < b.samples_.size(); ++i) {
        CurveSample c = b.samples_[i];
        c.T += shift;
        s.push_back(c);
    }
    return PolyCurve(a.kind(), std::move(s));
}

}  // namespace eph
