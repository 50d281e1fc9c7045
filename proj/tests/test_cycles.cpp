#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eph/cycles.hpp"
#include "eph/error.hpp"
#include "eph/moebius.hpp"
#include "support.hpp"

using namespace eph;

namespace {

Cycle parabola(double k, double l, double n, double m) { return {k, l, n, m, QuadraticMode::Parabola, false}; }

}  // namespace

TEST_SUITE("cycles") {
    TEST_CASE("flavors") {
        CHECK(ParabolicFlavor(-1) == ParabolicFlavor::elliptic());
        CHECK(to_string(ParabolicFlavor(1)) == "P_h");
        CHECK_THROWS_AS(ParabolicFlavor(2), Error);
    }

    TEST_CASE("evaluation") {
        CHECK(eval_cycle(parabola(0, 0, 2, 4), {5, 1}) == 0);
        CHECK(eval_cycle(parabola(1, 0, 2, 4), {0, 1}) == 0);
        CHECK(eval_cycle(parabola(1, 0, 0, 0), {1, 1}) == 1);
        CHECK(eval_cycle({1, 0, 0, -1, QuadraticMode::Circle, false}, {0.6, 0.8}) == doctest::Approx(0).epsilon(1e-15));
        CHECK(eval_cycle({1, 0, 0, 1, QuadraticMode::Hyperbola, false}, {0, 1}) == 0);
    }

    TEST_CASE("canonical form and comparison") {
        const Cycle c = parabola(2, -4, 1, 8);
        const Cycle k = c.canonical();
        CHECK(k.m == 1);
        CHECK(k.l == -0.5);
        CHECK(c.same_as(parabola(-1, 2, -0.5, -4)));
        CHECK_FALSE(c.same_as(parabola(1, 2, 0.5, 4)));
        CHECK_FALSE(c.same_as({2, -4, 1, 8, QuadraticMode::Circle, false}));
        CHECK_THROWS_AS(parabola(0, 0, 0, 0).canonical(), Error);
        CHECK(parabola(4, 4, 2, 4).label() == "(4,[4,2],4)");
    }

    TEST_CASE("geodesic family") {
        const Cycle a = geodesic_family(ParabolicFlavor(0), 1);
        CHECK((a.k == 4 && a.l == 4 && a.n == 2 && a.m == 4));
        const Cycle b = geodesic_family(ParabolicFlavor(0), 0);
        CHECK((b.k == 0 && b.l == 0 && b.n == 2 && b.m == 4));
        const Cycle c = geodesic_family(ParabolicFlavor(1), 0);
        CHECK((c.k == 1 && c.l == 0));
        CHECK(*parabola_height(c, 2) == 2);
        oracle::Rng rng(31);
        for (int f = -1; f <= 1; ++f) {
            for (int i = 0; i < 100; ++i) {
                CHECK(eval_cycle(geodesic_family(ParabolicFlavor(f), oracle::uniform(rng, -50, 50)), {0, 1}) == 0);
            }
        }
    }

    TEST_CASE("elliptic geodesics through i") {
        const Cycle unit = elliptic_geodesic_through_i(std::numbers::pi / 4);
        CHECK(unit.same_as({1, 0, 0, -1, QuadraticMode::Circle, false}, 1e-15));
        CHECK(elliptic_geodesic_through_i(1e-10).same_as({0, 1, 0, 0, QuadraticMode::Circle, false}, 1e-9));
        oracle::Rng rng(32);
        for (int i = 0; i < 100; ++i) {
            const Cycle c = elliptic_geodesic_through_i(oracle::uniform(rng, -3, 3));
            CHECK(std::abs(eval_cycle(c, {0, 1})) <= 1e-12);
            CHECK(c.n == 0);  // centre on the real axis
        }
    }

    TEST_CASE("hyperbolic geodesics through i") {
        const auto h0 = hyperbolic_geodesics_through_i(0);
        CHECK(h0.spacelike.same_as({1, 0, 0, 1, QuadraticMode::Hyperbola, false}));
        CHECK(h0.timelike.same_as({0, 1, 0, 0, QuadraticMode::Hyperbola, false}));
        oracle::Rng rng(33);
        for (int i = 0; i < 100; ++i) {
            const auto h = hyperbolic_geodesics_through_i(oracle::uniform(rng, -2, 2));
            CHECK(std::abs(eval_cycle(h.spacelike, {0, 1})) <= 1e-12);
            CHECK(std::abs(eval_cycle(h.timelike, {0, 1})) <= 1e-12);
        }
    }

    TEST_CASE("f-orthogonality") {
        for (int f = -1; f <= 1; ++f) {
            CHECK(is_f_orthogonal(parabola(f, 0, 2, 4), ParabolicFlavor(f)));
        }
        CHECK_FALSE(is_f_orthogonal(parabola(1, 0, 1, 0), ParabolicFlavor(1)));
        oracle::Rng rng(34);
        for (int f = -1; f <= 1; ++f) {
            for (int i = 0; i < 1000; ++i) {
                const double t = oracle::uniform(rng, -1000, 1000);
                CHECK(std::abs(f_orthogonality_defect(geodesic_family(ParabolicFlavor(f), t), ParabolicFlavor(f))) <=
                      1e-12);
            }
        }
    }

    TEST_CASE("geodesics through a pair") {
        const auto two = geodesics_through_pair({0, 1}, {2, 1}, ParabolicFlavor(0));
        REQUIRE(two.size() == 2);
        CHECK(two[0].connecting);
        CHECK(two[0].cycle.same_as(parabola(0, 0, 2, 4)));
        CHECK(two[1].cycle.same_as(parabola(4, 4, 2, 4)));
        CHECK(two[0].t == 0);
        CHECK(two[1].t == 1);

        const auto vertical = geodesics_through_pair({0.5, 1}, {0.5, 3}, ParabolicFlavor(0));
        REQUIRE(vertical.size() == 1);
        CHECK(vertical[0].cycle.degenerate);
        CHECK(eval_cycle(vertical[0].cycle, {0.5, 7}) == 0);

        // discriminant 4V - U^2 = 0 for flavor +1 at w2 = 2 + i
        const auto one = geodesics_through_pair({0, 1}, {2, 1}, ParabolicFlavor(1));
        CHECK(one.size() == 1);
        try {
            (void)geodesics_through_pair({0, 1}, {3, 1}, ParabolicFlavor(1));
            FAIL("expected NoRealSolution");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NoRealSolution);
        }
    }

    TEST_CASE("property: pair geodesics pass through both points") {
        oracle::Rng rng(35);
        for (int f = -1; f <= 1; ++f) {
            int checked = 0;
            while (checked < 300) {
                const Point w1 = oracle::random_point(rng), w2 = oracle::random_point(rng);
                std::vector<PairGeodesic> gs;
                try {
                    gs = geodesics_through_pair(w1, w2, ParabolicFlavor(f));
                } catch (const Error&) {
                    continue;
                }
                for (const auto& g : gs) {
                    CHECK(std::abs(cycle_residual(g.cycle, w1)) <= 1e-9);
                    CHECK(std::abs(cycle_residual(g.cycle, w2)) <= 1e-9);
                    CHECK(is_f_orthogonal(g.cycle, ParabolicFlavor(f)));
                }
                ++checked;
            }
        }
    }

    TEST_CASE("property: pair geodesics move with the pair") {
        oracle::Rng rng(36);
        for (int f = -1; f <= 1; ++f) {
            int checked = 0;
            while (checked < 100) {
                const MoebiusMap g = oracle::random_map(rng);
                const Point w1 = oracle::random_point(rng, 2, 0.5, 2), w2 = oracle::random_point(rng, 2, 0.5, 2);
                if (std::abs(w1.u - w2.u) < 0.2) continue;
                std::vector<PairGeodesic> before, after;
                HNumber g1, g2;
                try {
                    before = geodesics_through_pair(w1, w2, ParabolicFlavor(f));
                    g1 = apply(g, HNumber(w1, GeometryKind::Parabolic));
                    g2 = apply(g, HNumber(w2, GeometryKind::Parabolic));
                    if (g1.im() <= 0 || g2.im() <= 0) continue;
                    after = geodesics_through_pair(g1.point(), g2.point(), ParabolicFlavor(f));
                } catch (const Error&) {
                    continue;
                }
                if (before.size() != after.size() || after[0].cycle.degenerate) continue;
                // points of each original cycle map onto one of the image cycles
                for (const auto& b : before) {
                    for (double s : {0.25, 0.5, 0.75}) {
                        const double u = w1.u + s * (w2.u - w1.u);
                        const double v = *parabola_height(b.cycle, u);
                        const HNumber w(u, v, GeometryKind::Parabolic);
                        if (std::abs(g.c() * u + g.d()) < 0.2 || v <= 0) continue;
                        const Point img = apply(g, w).point();
                        double best = 1e300;
                        for (const auto& a : after) best = std::min(best, std::abs(cycle_residual(a.cycle, img)));
                        CHECK(best <= 1e-8);
                    }
                }
                ++checked;
            }
        }
    }

    TEST_CASE("foci") {
        const Point vertex = parabola_focus(parabola(4, 4, 2, 4), FocusNotion::Vertex);
        CHECK(vertex.u == doctest::Approx(1));
        CHECK(std::abs(vertex.v) <= 1e-15);
        const Point f1 = parabola_focus(parabola(1, 0, 2, 4), FocusNotion::UsualFocus);
        CHECK((f1.u == 0 && f1.v == doctest::Approx(2)));
        const Point f2 = parabola_focus(parabola(-1, 0, 2, 4), FocusNotion::UsualFocus);
        CHECK((f2.u == 0 && std::abs(f2.v) <= 1e-15));
        CHECK_THROWS_AS(parabola_focus(parabola(0, 0, 2, 4), FocusNotion::Vertex), Error);
    }

    TEST_CASE("which focus notion lies on the real axis, per flavor") {
        // For family members through i: P_p puts the vertex on the axis,
        // P_e the usual focus and P_h the directrix point.
        oracle::Rng rng(37);
        for (int i = 0; i < 200; ++i) {
            const double t = oracle::uniform(rng, 0.1, 5) * (i % 2 ? 1 : -1);
            auto on_axis = [&](int f, FocusNotion n) {
                return std::abs(parabola_focus(geodesic_family(ParabolicFlavor(f), t), n).v) <= 1e-9;
            };
            CHECK(on_axis(0, FocusNotion::Vertex));
            CHECK_FALSE(on_axis(0, FocusNotion::UsualFocus));
            CHECK(on_axis(-1, FocusNotion::UsualFocus));
            CHECK_FALSE(on_axis(-1, FocusNotion::DirectrixNearest));
            CHECK(on_axis(1, FocusNotion::DirectrixNearest));
            CHECK_FALSE(on_axis(1, FocusNotion::UsualFocus));
        }
    }

    TEST_CASE("affine pullback moves i to w1") {
        const Cycle c = affine_pullback(geodesic_family(ParabolicFlavor(0), 0), {3, 2});
        CHECK(eval_cycle(c, {3, 2}) == 0);
        CHECK(eval_cycle(c, {7, 2}) == 0);  // v = 1 becomes v = 2
    }

    TEST_CASE("family arcs stay in the upper half-plane") {
        oracle::Rng rng(38);
        for (int f = -1; f <= 1; ++f) {
            for (int i = 0; i < 200; ++i) {
                const double t = oracle::uniform(rng, -3, 3);
                const Cycle c = geodesic_family(ParabolicFlavor(f), t);
                const Interval arc = family_arc(ParabolicFlavor(f), t, 10);
                CHECK(arc.lo < 0);
                CHECK(arc.hi > 0);
                for (int k = 1; k < 100; ++k) {
                    const double u = arc.lo + (arc.hi - arc.lo) * k / 100.0;
                    CHECK(*parabola_height(c, u) > 0);
                    CHECK(t * u < 1);
                }
            }
        }
    }
}
