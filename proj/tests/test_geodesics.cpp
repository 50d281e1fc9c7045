#include <doctest.h>

#include <chrono>
#include <cmath>

#include "eph/error.hpp"
#include "eph/geodesics.hpp"
#include "support.hpp"

using namespace eph;

namespace {

constexpr auto P = GeometryKind::Parabolic;
DistanceSpec parabolic(int f) { return {P, ParabolicFlavor(f), Relabel::identity()}; }

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

PolyCurve graph(const std::function<double(double)>& v, double u0, double u1, std::size_t n = 41) {
    return PolyCurve::sample(P, [&](double u) { return Point{u, v(u)}; }, u0, u1, n);
}

// Oracle for the additivity slope: the direction s at w2 along which
// d(w1, w2 + h(1, s)) = d(w1, w2) + d(w2, w2 + h(1, s)) for small h.
double oracle_slope(Point w1, Point w2, int f) {
    const double h = 1e-5 * (w2.u > w1.u ? 1 : -1);
    auto defect = [&](double s) {
        const Point q{w2.u + h, w2.v + h * s};
        const auto d = [&](Point a, Point b) { return distance(parabolic(f), a, b).core; };
        return d(w1, q) - d(w1, w2) - d(w2, q);
    };
    // to first order in h the defect is linear in s and vanishes at the slope
    return oracle::bisect(defect, -50, 50);
}

}  // namespace

TEST_SUITE("geodesics") {
    TEST_CASE("additivity slope") {
        CHECK(additivity_slope({0, 1}, {2, 1}, ParabolicFlavor(0)) == 0);
        CHECK(additivity_slope({0, 1}, {2, 4}, ParabolicFlavor(0)) == 2);
        CHECK(code_of([] { (void)additivity_slope({0, 1}, {0, 2}, ParabolicFlavor(0)); }) == ErrorCode::VerticalPair);
    }

    TEST_CASE("additivity slope matches the slope of the family member") {
        oracle::Rng rng(51);
        for (int f = -1; f <= 1; ++f) {
            for (int i = 0; i < 200; ++i) {
                const double t = oracle::uniform(rng, -1, 1);
                const Interval arc = family_arc(ParabolicFlavor(f), t, 3);
                const double u = oracle::uniform(rng, 0.3 * arc.lo, 0.9 * arc.hi);
                if (std::abs(u) < 0.05) continue;
                const Cycle c = geodesic_family(ParabolicFlavor(f), t);
                const double slope = (c.k * u - c.l) / c.n;
                CHECK(additivity_slope({0, 1}, {u, *parabola_height(c, u)}, ParabolicFlavor(f)) ==
                      doctest::Approx(slope).epsilon(1e-9).scale(1));
            }
        }
    }

    TEST_CASE("additivity slope matches a finite-difference oracle on the distance") {
        oracle::Rng rng(52);
        for (int f = -1; f <= 1; ++f) {
            int checked = 0;
            while (checked < 20) {
                const Point w1 = oracle::random_point(rng, 1, 0.5, 2), w2 = oracle::random_point(rng, 1, 0.5, 2);
                if (std::abs(w1.u - w2.u) < 0.3) continue;
                double s;
                try {
                    s = additivity_slope(w1, w2, ParabolicFlavor(f));
                    (void)distance(parabolic(f), w1, w2);
                    if (f == 1 && invariant_F(HNumber(w1, P), HNumber(w2, P)) > 1.6) continue;
                } catch (const Error&) {
                    continue;
                }
                CHECK(std::abs(oracle_slope(w1, w2, f) - s) <= 1e-3 * std::max(1.0, std::abs(s)));
                ++checked;
            }
        }
    }

    TEST_CASE("integration reproduces the family") {
        GeodesicOdeOptions o;
        o.flavor = ParabolicFlavor(0);
        o.u_max = 2;
        const FamilyFit a = fit_to_family(integrate_geodesic(o), o.flavor);
        CHECK(a.max_residual <= 1e-4);
        CHECK(std::abs(a.t) <= 1e-6);
        o.flavor = ParabolicFlavor(1);
        o.u_max = 0.8;
        o.direction = -1;
        o.initial_slope = 0.7;
        const FamilyFit b = fit_to_family(integrate_geodesic(o), o.flavor);
        CHECK(b.max_residual <= 1e-4);
        CHECK(b.t == doctest::Approx(-0.35).epsilon(1e-6));
        o.step = 0;
        CHECK(code_of([&] { (void)integrate_geodesic(o); }) == ErrorCode::InvalidArgument);
        o.step = 0.5;
        o.u_max = 3;
        o.error_limit = 1e-12;
        CHECK(code_of([&] { (void)integrate_geodesic(o); }) == ErrorCode::StepTooLarge);
    }

    TEST_CASE("integration stops at the real axis") {
        GeodesicOdeOptions o;
        o.flavor = ParabolicFlavor(-1);  // v = 1 - u^2 / 4 meets the axis at u = 2
        o.u_max = 3;
        CHECK(code_of([&] { (void)integrate_geodesic(o); }) == ErrorCode::NotInUpperHalfPlane);
    }

    TEST_CASE("property: integration agrees with the family in every flavor and direction") {
        for (int f = -1; f <= 1; ++f) {
            for (int dir : {-1, 1}) {
                for (double c1 : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
                    const Interval arc = family_arc(ParabolicFlavor(f), -c1 / 2, 10);
                    const double reach = dir > 0 ? arc.hi : -arc.lo;
                    if (reach < 1.2) continue;
                    GeodesicOdeOptions o;
                    o.flavor = ParabolicFlavor(f);
                    o.direction = dir;
                    o.initial_slope = c1;
                    o.u_max = std::min(3.0, 0.9 * reach);
                    const FamilyFit fit = fit_to_family(integrate_geodesic(o), o.flavor);
                    CHECK(fit.max_residual <= 1e-4);
                    CHECK(fit.t == doctest::Approx(-c1 / 2).epsilon(1e-6).scale(1));
                }
            }
        }
    }

    TEST_CASE("family fit") {
        const FamilyFit a = fit_to_family(graph([](double u) { return (u - 1) * (u - 1); }, -0.5, 0.8),
                                          ParabolicFlavor(0));
        CHECK(a.t == doctest::Approx(1).epsilon(1e-12));
        CHECK(a.max_residual <= 1e-12);
        const FamilyFit b = fit_to_family(graph([](double) { return 1.0; }, -2, 2), ParabolicFlavor(0));
        CHECK(std::abs(b.t) <= 1e-12);
        const FamilyFit c = fit_to_family(graph([](double u) { return u * u + 1; }, -2, 2), ParabolicFlavor(0));
        CHECK(c.max_residual > 0.1);
        const Point pts[] = {{0, 1}, {0, 2}, {0, 3}};
        const double T[] = {0, 1, 2};
        CHECK(code_of([&] { (void)fit_to_family(PolyCurve(P, T, pts), ParabolicFlavor(0)); }) ==
              ErrorCode::DegenerateFit);
    }

    TEST_CASE("additivity along family members") {
        const Triple line[] = {{Point{-3, 1}, Point{0.5, 1}, Point{4, 1}}, {Point{1, 1}, Point{2, 1}, Point{7, 1}}};
        CHECK(additivity_check(parabolic(0), geodesic_family(ParabolicFlavor(0), 0), line) <= 1e-12);

        oracle::Rng rng(53);
        std::vector<Triple> triples;
        while (triples.size() < 200) {
            std::array<double, 3> u{oracle::uniform(rng, -1, 0.95), oracle::uniform(rng, -1, 0.95),
                                    oracle::uniform(rng, -1, 0.95)};
            std::sort(u.begin(), u.end());
            if (u[1] - u[0] < 1e-3 || u[2] - u[1] < 1e-3) continue;
            Triple t;
            for (int i = 0; i < 3; ++i) t[i] = {u[i], (u[i] - 1) * (u[i] - 1)};
            triples.push_back(t);
        }
        const Cycle member{4, 4, 2, 4, QuadraticMode::Parabola, false};
        CHECK(additivity_check(parabolic(0), member, triples) <= 1e-9);

        const Triple off[] = {{Point{-1, 4}, Point{0, 1.5}, Point{0.5, 0.25}}};
        CHECK(code_of([&] { (void)additivity_check(parabolic(0), member, off); }) == ErrorCode::PointsNotOnCycle);
    }

    TEST_CASE("flavor +1 additivity holds up to the saturation of asin") {
        const Cycle principal = geodesic_family(ParabolicFlavor(1), 0);  // v = u^2 / 4 + 1
        auto on = [](double x) { return Point{x, x * x / 4 + 1}; };
        // arc coordinate 2 atan(x / 2): spans below pi / 2 are additive
        const Triple inside[] = {{on(-1), on(0.2), on(1.5)}};
        CHECK(additivity_check(parabolic(1), principal, inside) <= 1e-12);
        const Triple beyond[] = {{on(-3), on(0), on(3)}};
        CHECK(additivity_check(parabolic(1), principal, beyond) > 0.1);
    }

    TEST_CASE("grid oracle") {
        const auto t0 = std::chrono::steady_clock::now();
        const double d = grid_shortest_path(GeometryKind::Elliptic, {0, 1}, {0, 2}, 256);
        CHECK(std::abs(d - std::log(2.0)) <= 0.05 * std::log(2.0));
        CHECK(code_of([] { (void)grid_shortest_path(GeometryKind::Parabolic, {0, 1}, {0, 2}, 256); }) ==
              ErrorCode::UnsupportedGeometry);
        CHECK(code_of([] { (void)grid_shortest_path(GeometryKind::Hyperbolic, {0, 1}, {0, 2}, 256); }) ==
              ErrorCode::UnsupportedGeometry);
        CHECK(code_of([] { (void)grid_shortest_path(GeometryKind::Elliptic, {0, 1}, {0, 2}, 32); }) ==
              ErrorCode::InvalidArgument);
        CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(10));
    }

    TEST_CASE("triangle classification") {
        const DistanceSpec spec = parabolic(0);
        const Point w1{0, 1}, w2{2, 1};
        CHECK(classify_triangle(spec, w1, w2, {1, 1}) == TriangleClass::Equality);
        CHECK(classify_triangle(spec, w1, w2, {1, 0.5}) == TriangleClass::StrictTriangle);
        CHECK(classify_triangle(spec, w1, w2, {1, 2}) == TriangleClass::ReverseTriangle);
        CHECK(classify_triangle(spec, w1, w2, {3, 2}) == TriangleClass::OutsideStrip);
        CHECK(classify_triangle(spec, w1, w2, {0, 2}) == TriangleClass::Degenerate);
        // on the outer geodesic v = (u - 1)^2 the sum is additive too
        CHECK(compare_triangle(spec, w1, w2, {3, 4}) == TriangleClass::Equality);
        CHECK(classify_triangle(spec, w1, w2, {1, 0.02}, GeodesicBranch::Outer, 0.05) == TriangleClass::Equality);
        CHECK(select_geodesic(w1, w2, ParabolicFlavor(0)).t == 0);
        CHECK(select_geodesic(w1, w2, ParabolicFlavor(0), GeodesicBranch::Outer).t == 1);
        CHECK_THROWS_AS(classify_triangle(spec, w2, w1, {1, 1}), Error);
        const DistanceSpec elliptic{GeometryKind::Elliptic, ParabolicFlavor(), Relabel::identity()};
        CHECK_THROWS_AS(classify_triangle(elliptic, w1, w2, {1, 1}), Error);
    }

    TEST_CASE("property: distance falls as the point rises") {
        oracle::Rng rng(54);
        for (int f = -1; f <= 1; ++f) {
            for (int i = 0; i < 200; ++i) {
                const Point w = oracle::random_point(rng, 1);
                const double a = oracle::uniform(rng, -1, 1);
                if (std::abs(a - w.u) < 0.05) continue;
                double prev = 1e300;
                for (int k = 0; k < 50; ++k) {
                    const double b = 0.5 + 0.1 * k;
                    double d;
                    try {
                        d = distance(parabolic(f), Point{a, b}, w).core;
                    } catch (const Error&) {
                        continue;
                    }
                    CHECK(d < prev);
                    prev = d;
                }
            }
        }
    }

    TEST_CASE("region raster") {
        const DistanceSpec spec = parabolic(0);
        const Point w1{0, 1}, w2{2, 1};
        RasterOptions o;
        o.threads = 4;
        const Raster r = region_raster(spec, w1, w2, {0, 2, 0, 3}, 200, 200, o);
        std::size_t strict = 0, reverse = 0;
        for (auto c : r.cells) {
            strict += c == TriangleClass::StrictTriangle;
            reverse += c == TriangleClass::ReverseTriangle;
        }
        CHECK(strict > 0);
        CHECK(reverse > 0);
        // each column flips class across v = 1
        for (std::size_t i = 0; i < r.nx; ++i) {
            for (std::size_t j = 0; j < r.ny; ++j) {
                const double v = r.center(i, j).v;
                if (v < 1 - r.band) CHECK(r.at(i, j) == TriangleClass::StrictTriangle);
                else if (v > 1 + r.band) CHECK(r.at(i, j) == TriangleClass::ReverseTriangle);
                else CHECK(r.at(i, j) == TriangleClass::Equality);
            }
        }

        const Raster wide = region_raster(spec, w1, w2, {-1, 3, 0, 3}, 80, 60);
        for (std::size_t j = 0; j < wide.ny; ++j) {
            for (std::size_t i = 0; i < wide.nx; ++i) {
                const double u = wide.center(i, j).u;
                if (u < 0 || u > 2) CHECK(wide.at(i, j) == TriangleClass::OutsideStrip);
            }
        }

        // threading does not change the result
        RasterOptions plane;
        plane.whole_plane = true;
        const Raster single = region_raster(spec, w1, w2, {-1, 3, 0, 3}, 80, 60, plane);
        plane.threads = 7;
        CHECK(region_raster(spec, w1, w2, {-1, 3, 0, 3}, 80, 60, plane).cells == single.cells);
        for (std::size_t j = 0; j < single.ny; ++j) {
            for (std::size_t i = 0; i < single.nx; ++i) {
                CHECK(single.at(i, j) == raster_class(spec, w1, w2, single.center(i, j), true, single.band));
            }
        }
    }
}
