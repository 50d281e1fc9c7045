#include "eph/cycles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "eph/error.hpp"

namespace eph {

ParabolicFlavor::ParabolicFlavor(int s) : value_(s) {
    if (s < -1 || s > 1) {
        throw Error(ErrorCode::InvalidArgument, "flavor must be -1, 0 or 1, got " + std::to_string(s));
    }
}

std::string to_string(ParabolicFlavor flavor) {
    switch (flavor.value()) {
        case -1: return "P_e";
        case 0: return "P_p";
        default: return "P_h";
    }
}

Cycle Cycle::canonical() const {
    const std::array<double, 4> c{k, l, n, m};
    double big = 0.0;
    for (double x : c) {
        if (std::abs(x) > std::abs(big)) {
            big = x;
        }
    }
    if (big == 0.0) {
        throw Error(ErrorCode::DegenerateCycle, "all cycle coefficients are zero");
    }
    Cycle out = *this;
    out.k = k / big;
    out.l = l / big;
    out.n = n / big;
    out.m = m / big;
    return out;
}

bool Cycle::same_as(const Cycle& other, double tol) const {
    if (mode != other.mode) {
        return false;
    }
    const Cycle a = canonical();
    const Cycle b = other.canonical();
    auto close = [&](double s) {
        return std::abs(a.k - s * b.k) <= tol && std::abs(a.l - s * b.l) <= tol && std::abs(a.n - s * b.n) <= tol &&
               std::abs(a.m - s * b.m) <= tol;
    };
    // ties between equal-magnitude coefficients can pick opposite signs
    return close(1.0) || close(-1.0);
}

std::string Cycle::label(int precision) const {
    std::ostringstream os;
    os.precision(precision);
    const double scale = std::max({std::abs(k), std::abs(l), std::abs(n), std::abs(m)});
    const double snap = std::max(5e-16, 0.5 * std::pow(10.0, -precision) * scale);
    auto put = [&](double x) { os << (std::abs(x) < snap ? 0.0 : x); };
    os << '(';
    put(k);
    os << ",[";
    put(l);
    os << ',';
    put(n);
    os << "],";
    put(m);
    os << ')';
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cycle& c) { return os << c.label(6); }

double eval_cycle(const Cycle& c, Point p) {
    double q = p.u * p.u;
    if (c.mode == QuadraticMode::Circle) {
        q += p.v * p.v;
    } else if (c.mode == QuadraticMode::Hyperbola) {
        q -= p.v * p.v;
    }
    return c.k * q - 2 * c.l * p.u - 2 * c.n * p.v + c.m;
}

double cycle_residual(const Cycle& c, Point p) { return eval_cycle(c.canonical(), p); }

Cycle geodesic_family(ParabolicFlavor flavor, double t) {
    return {flavor.value() + 4 * t * t, 4 * t, 2.0, 4.0, QuadraticMode::Parabola, false};
}

Cycle elliptic_geodesic_through_i(double t) {
    const double s = std::sin(2 * t), c = std::cos(2 * t);
    return {s, c, 0.0, -s, QuadraticMode::Circle, false};
}

HyperbolicGeodesics hyperbolic_geodesics_through_i(double t) {
    const double s = std::sinh(2 * t), c = std::cosh(2 * t);
    return {{1.0, t, 0.0, 1.0, QuadraticMode::Hyperbola, false}, {s, c, 0.0, s, QuadraticMode::Hyperbola, false}};
}

double f_orthogonality_defect(const Cycle& c, ParabolicFlavor flavor) {
    const Cycle q = c.canonical();
    return q.l * q.l + flavor.value() * q.n * q.n - q.m * q.k;
}

bool is_f_orthogonal(const Cycle& c, ParabolicFlavor flavor) {
    return std::abs(f_orthogonality_defect(c, flavor)) <= 1e-9;
}

Cycle affine_pullback(const Cycle& c, Point origin) {
    if (c.mode != QuadraticMode::Parabola) {
        throw Error(ErrorCode::InvalidArgument, "affine pullback is implemented for parabola-mode cycles");
    }
    const double u0 = origin.u, v0 = origin.v;
    Cycle out = c;
    out.k = c.k;
    out.l = c.k * u0 + c.l * v0;
    out.n = c.n * v0;
    out.m = c.k * u0 * u0 + 2 * c.l * v0 * u0 + c.m * v0 * v0;
    return out;
}

std::vector<PairGeodesic> geodesics_through_pair(Point w1, Point w2, ParabolicFlavor flavor) {
    if (!(w1.v > 0.0) || !(w2.v > 0.0)) {
        throw Error(ErrorCode::NotInUpperHalfPlane, "geodesic endpoints must have v > 0");
    }
    if (w1 == w2) {
        throw Error(ErrorCode::InvalidArgument, "geodesic endpoints coincide");
    }
    // move w1 to i with w -> (w - u1) / v1
    const double U = (w2.u - w1.u) / w1.v;
    const double V = w2.v / w1.v;
    if (std::abs(U) <= 1e-12 * std::max(1.0, std::abs(w1.u))) {
        Cycle line{0.0, 1.0, 0.0, 2 * w1.u, QuadraticMode::Parabola, true};
        return {{line, std::numeric_limits<double>::quiet_NaN(), true}};
    }
    double disc = 4 * V - flavor.value() * U * U;
    const double scale = 4 * V + U * U;
    if (disc < -1e-12 * scale) {
        throw Error(ErrorCode::NoRealSolution, "no family member joins the two points");
    }
    disc = std::max(disc, 0.0);
    const double root = std::sqrt(disc);
    std::vector<PairGeodesic> out;
    const double t_conn = (2 - root) / (2 * U);
    out.push_back({affine_pullback(geodesic_family(flavor, t_conn), w1), t_conn, true});
    if (disc > 1e-12 * scale) {
        const double t_outer = (2 + root) / (2 * U);
        out.push_back({affine_pullback(geodesic_family(flavor, t_outer), w1), t_outer, false});
    }
    return out;
}

Point parabola_focus(const Cycle& c, FocusNotion notion) {
    if (c.mode != QuadraticMode::Parabola || c.k == 0.0 || c.n == 0.0) {
        throw Error(ErrorCode::DegenerateCycle, "focus needs a parabola v = a u^2 + b u + c");
    }
    const double a = c.k / (2 * c.n);
    const double b = -c.l / c.n;
    const double c0 = c.m / (2 * c.n);
    const Point vertex{-b / (2 * a), c0 - b * b / (4 * a)};
    const double focal = 1.0 / (4 * a);  // signed: focus lies on the opening side
    switch (notion) {
        case FocusNotion::Vertex: return vertex;
        case FocusNotion::UsualFocus: return {vertex.u, vertex.v + focal};
        case FocusNotion::DirectrixNearest: return {vertex.u, vertex.v - focal};
    }
    return vertex;
}

Interval family_arc(ParabolicFlavor flavor, double t, double limit) {
    double lo = -limit, hi = limit;
    if (t > 0) {
        hi = std::min(hi, 1.0 / t);
    } else if (t < 0) {
        lo = std::max(lo, 1.0 / t);
    }
    // v(u) = A u^2 + B u + 1 with v(0) = 1
    const double A = flavor.value() / 4.0 + t * t;
    const double B = -2 * t;
    auto clip_root = [&](double r) {
        if (r > 0) {
            hi = std::min(hi, r);
        } else if (r < 0) {
            lo = std::max(lo, r);
        }
    };
    if (A == 0.0) {
        if (B != 0.0) {
            clip_root(-1.0 / B);
        }
    } else {
        const double disc = B * B - 4 * A;
        if (disc >= 0) {
            const double q = -0.5 * (B + std::copysign(std::sqrt(disc), B == 0.0 ? 1.0 : B));
            if (q != 0.0) {
                clip_root(q / A);
                clip_root(1.0 / q);
            }
        }
    }
    return {lo, hi};
}

std::optional<double> parabola_height(const Cycle& c, double u) {
    if (c.mode != QuadraticMode::Parabola || c.n == 0.0) {
        return std::nullopt;
    }
    return (c.k * u * u - 2 * c.l * u + c.m) / (2 * c.n);
}

}  // namespace eph
