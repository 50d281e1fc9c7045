#pragma once

// Independent oracles and generators for the tests. Nothing here calls the
// library's quadrature, samplers or distance code.

#include <array>
#include <cmath>
#include <functional>
#include <random>

#include "eph/moebius.hpp"
#include "eph/numbers.hpp"

namespace oracle {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline eph::Point random_point(Rng& rng, double umax = 3.0, double vlo = 0.2, double vhi = 3.0) {
    return {uniform(rng, -umax, umax), uniform(rng, vlo, vhi)};
}

/// Determinant-one map with entries in [-2, 2] and |a| >= 0.25.
inline eph::MoebiusMap random_map(Rng& rng) {
    for (;;) {
        const double a = uniform(rng, -2, 2), b = uniform(rng, -2, 2), c = uniform(rng, -2, 2);
        if (std::abs(a) >= 0.25) {
            return {a, b, c, (1 + b * c) / a};
        }
    }
}

/// Composite 10-point Gauss-Legendre rule on `panels` equal panels.
inline double integrate(const std::function<double(double)>& f, double a, double b, int panels = 400) {
    static constexpr std::array<double, 5> x{0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                             0.8650633666889845, 0.9739065285171717};
    static constexpr std::array<double, 5> w{0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                             0.1494513491505806, 0.0666713443086881};
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h, half = 0.5 * h;
        for (int k = 0; k < 5; ++k) {
            sum += w[k] * half * (f(mid - half * x[k]) + f(mid + half * x[k]));
        }
    }
    return sum;
}

/// Central-difference Jacobian of the Moebius action at w, columns d/du, d/dv.
inline eph::Matrix2 fd_jacobian(const eph::MoebiusMap& g, const eph::HNumber& w, double h = 1e-6) {
    const auto k = w.kind();
    auto at = [&](double du, double dv) { return eph::apply(g, eph::HNumber(w.re() + du, w.im() + dv, k)); };
    const auto pu = at(h, 0), mu = at(-h, 0), pv = at(0, h), mv = at(0, -h);
    return {{{(pu.re() - mu.re()) / (2 * h), (pv.re() - mv.re()) / (2 * h)},
             {(pu.im() - mu.im()) / (2 * h), (pv.im() - mv.im()) / (2 * h)}}};
}

/// Root of f on [a, b] by bisection; f(a) and f(b) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double a, double b, int iterations = 200) {
    double fa = f(a);
    for (int i = 0; i < iterations; ++i) {
        const double m = 0.5 * (a + b), fm = f(m);
        if ((fm < 0) == (fa < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace oracle
