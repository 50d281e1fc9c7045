#include "eph/moebius.hpp"

#include <cmath>
#include <vector>

#include "eph/error.hpp"

namespace eph {

MoebiusMap::MoebiusMap(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
    if (!(std::abs(det() - 1.0) <= kDeterminantTolerance)) {
        throw Error(ErrorCode::InvalidArgument, "Moebius matrix must have determinant one");
    }
}

MoebiusMap compose(const MoebiusMap& g, const MoebiusMap& h) {
    double a = g.a() * h.a() + g.b() * h.c();
    double b = g.a() * h.b() + g.b() * h.d();
    double c = g.c() * h.a() + g.d() * h.c();
    double d = g.c() * h.b() + g.d() * h.d();
    const double det = a * d - b * c;
    if (std::abs(det - 1.0) > 1e-12) {
        const double s = std::sqrt(det);
        a /= s;
        b /= s;
        c /= s;
        d /= s;
    }
    return {a, b, c, d};
}

GeometryKind natural_geometry(SubgroupKind kind) noexcept {
    switch (kind) {
        case SubgroupKind::K: return GeometryKind::Elliptic;
        case SubgroupKind::Nprime: return GeometryKind::Parabolic;
        case SubgroupKind::Aprime: return GeometryKind::Hyperbolic;
    }
    return GeometryKind::Elliptic;
}

SubgroupKind natural_subgroup(GeometryKind kind) noexcept {
    switch (kind) {
        case GeometryKind::Elliptic: return SubgroupKind::K;
        case GeometryKind::Parabolic: return SubgroupKind::Nprime;
        case GeometryKind::Hyperbolic: return SubgroupKind::Aprime;
    }
    return SubgroupKind::K;
}

MoebiusMap subgroup_element(SubgroupKind kind, double param) {
    switch (kind) {
        case SubgroupKind::K: return {std::cos(param), -std::sin(param), std::sin(param), std::cos(param)};
        case SubgroupKind::Nprime: return {1.0, 0.0, param, 1.0};
        case SubgroupKind::Aprime: return {std::cosh(param), std::sinh(param), std::sinh(param), std::cosh(param)};
    }
    return MoebiusMap::identity();
}

HNumber apply(const MoebiusMap& g, const HNumber& w) {
    const GeometryKind k = w.kind();
    const HNumber den = g.c() * w + HNumber::real(g.d(), k);
    if (!den.invertible()) {
        throw Error(ErrorCode::PointAtInfinity, "c w + d is not invertible");
    }
    return (g.a() * w + HNumber::real(g.b(), k)) / den;
}

Matrix2 derivative(const MoebiusMap& g, const HNumber& w) {
    const GeometryKind k = w.kind();
    const HNumber den = g.c() * w + HNumber::real(g.d(), k);
    if (!den.invertible()) {
        throw Error(ErrorCode::PointAtInfinity, "c w + d is not invertible");
    }
    const HNumber m = HNumber::real(1.0, k) / (den * den);
    // multiplication by x + i y sends du + i dv to (x du + sigma y dv) + i (y du + x dv)
    const double s = sigma(k);
    return {{{m.re(), s * m.im()}, {m.im(), m.re()}}};
}

bool fixes_i(const MoebiusMap& g, GeometryKind kind) {
    try {
        const HNumber w = apply(g, HNumber::unit(kind));
        return std::abs(w.re()) <= 1e-9 && std::abs(w.im() - 1.0) <= 1e-9;
    } catch (const Error&) {
        return false;
    }
}

MoebiusMap normalizer_to_i(const HNumber& w0) {
    if (!(w0.im() > 0.0)) {
        throw Error(ErrorCode::NotInUpperHalfPlane, "normalizer needs Im w0 > 0");
    }
    const double r = std::sqrt(w0.im());
    return {1.0 / r, -w0.re() / r, 0.0, r};
}

Matrix2 jacobian_at_i(SubgroupKind kind, double param) {
    switch (kind) {
        case SubgroupKind::K: {
            const double c = std::cos(2 * param), s = std::sin(2 * param);
            return {{{c, -s}, {s, c}}};
        }
        case SubgroupKind::Nprime: return {{{1.0, 0.0}, {2 * param, 1.0}}};
        case SubgroupKind::Aprime: {
            const double c = std::cosh(2 * param), s = std::sinh(2 * param);
            return {{{c, s}, {s, c}}};
        }
    }
    return {{{1.0, 0.0}, {0.0, 1.0}}};
}

PolyCurve orbit_points(SubgroupKind kind, const HNumber& w0, std::span<const double> params) {
    std::vector<CurveSample> samples;
    samples.reserve(params.size());
    for (double p : params) {
        const MoebiusMap g = subgroup_element(kind, p);
        const HNumber w = apply(g, w0);
        // velocity: the infinitesimal generator at g_p w0
        const GeometryKind k = w.kind();
        HNumber vel;
        switch (kind) {
            case SubgroupKind::K: vel = HNumber::real(-1.0, k) - w * w; break;
            case SubgroupKind::Nprime: vel = -1.0 * (w * w); break;
            case SubgroupKind::Aprime: vel = HNumber::real(1.0, k) - w * w; break;
        }
        samples.push_back({p, w.point(), vel.point(), std::nullopt});
    }
    return PolyCurve(w0.kind(), std::move(samples));
}

}  // namespace eph
