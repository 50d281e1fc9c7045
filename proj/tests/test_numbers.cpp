#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "eph/error.hpp"
#include "eph/numbers.hpp"
#include "support.hpp"

using namespace eph;

namespace {

constexpr auto E = GeometryKind::Elliptic;
constexpr auto P = GeometryKind::Parabolic;
constexpr auto H = GeometryKind::Hyperbolic;

void check_close(const HNumber& a, const HNumber& b, double tol) {
    CHECK(a.kind() == b.kind());
    CHECK(std::abs(a.re() - b.re()) <= tol);
    CHECK(std::abs(a.im() - b.im()) <= tol);
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an eph::Error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("numbers") {
    TEST_CASE("geometry kinds carry sigma") {
        CHECK(sigma(E) == -1);
        CHECK(sigma(P) == 0);
        CHECK(sigma(H) == 1);
        CHECK(geometry_from_sigma(1) == H);
        CHECK_THROWS(geometry_from_sigma(2));
    }

    TEST_CASE("addition and subtraction are componentwise") {
        CHECK(HNumber(1, 2, E) + HNumber(3, 4, E) == HNumber(4, 6, E));
        CHECK(HNumber(1, 2, P) - HNumber(1, 2, P) == HNumber(0, 0, P));
        CHECK(HNumber(1, 1, H) + HNumber(0, 0, H) == HNumber(1, 1, H));
        CHECK(-HNumber(1, -2, P) == HNumber(-1, 2, P));
    }

    TEST_CASE("multiplication uses i^2 = sigma") {
        CHECK(HNumber(0, 1, E) * HNumber(0, 1, E) == HNumber(-1, 0, E));
        CHECK(HNumber(0, 1, P) * HNumber(0, 1, P) == HNumber(0, 0, P));
        CHECK(HNumber(1, 2, H) * HNumber(3, 4, H) == HNumber(11, 10, H));
    }

    TEST_CASE("division") {
        check_close(HNumber(1, 1, P) / HNumber(2, 1, P), HNumber(0.5, 0.25, P), 1e-15);
        CHECK(code_of([] { (void)(HNumber(1, 1, P) / HNumber(0, 3, P)); }) == ErrorCode::ZeroDivisor);
        check_close(HNumber(1, 1, H) / HNumber(1.5, 0.5, H), HNumber(0.5, 0.5, H), 1e-15);
        check_close(HNumber(1, 1, H) / HNumber(1, 1 + 1e-3, H) * HNumber(1, 1 + 1e-3, H), HNumber(1, 1, H), 1e-9);
        CHECK(code_of([] { (void)(HNumber(1, 1, H) / HNumber(2, -2, H)); }) == ErrorCode::ZeroDivisor);
        CHECK(code_of([] { (void)(HNumber(1, 1, E) / HNumber(0, 0, E)); }) == ErrorCode::ZeroDivisor);
        check_close(HNumber(1, 1, H) / HNumber(1, 1 + 1e-6, H) * HNumber(1, 1 + 1e-6, H), HNumber(1, 1, H), 1e-6);
    }

    TEST_CASE("invertibility threshold") {
        CHECK(HNumber(2e-12, 5, P).invertible());
        CHECK_FALSE(HNumber(5e-13, 5, P).invertible());
        CHECK_FALSE(HNumber(1, 1 + 5e-13, H).invertible());
        CHECK(HNumber(0, 2e-12, E).invertible());
    }

    TEST_CASE("mixing kinds is a contract violation") {
        CHECK_THROWS_AS((void)(HNumber(1, 1, E) + HNumber(1, 1, P)), std::logic_error);
        CHECK_THROWS_AS((void)(HNumber(1, 1, H) * HNumber(1, 1, P)), std::logic_error);
    }

    TEST_CASE("modulus squared") {
        CHECK(modulus_sq(HNumber(3, 4, E)) == 25);
        CHECK(modulus_sq(HNumber(3, 4, P)) == 9);
        CHECK(modulus_sq(HNumber(3, 4, H)) == -7);
    }

    TEST_CASE("property: ring axioms, division and multiplicative modulus") {
        oracle::Rng rng(11);
        for (auto kind : {E, P, H}) {
            for (int i = 0; i < 2000; ++i) {
                auto r = [&] { return HNumber(oracle::uniform(rng, -3, 3), oracle::uniform(rng, -3, 3), kind); };
                const HNumber a = r(), b = r(), c = r();
                check_close((a * b) * c, a * (b * c), 1e-12 * 30);
                check_close(a * (b + c), a * b + a * c, 1e-12 * 30);
                check_close(a * b, b * a, 0.0);
                const double mab = modulus_sq(a * b), prod = modulus_sq(a) * modulus_sq(b);
                CHECK(std::abs(mab - prod) <= 1e-10 * std::max(1.0, std::abs(prod)));
                if (std::abs(modulus_sq(b)) > 1e-3) {
                    const HNumber q = (a * b) / b;
                    const double scale = std::max({1.0, std::abs(a.re()), std::abs(a.im())});
                    CHECK(std::abs(q.re() - a.re()) <= 1e-10 * scale);
                    CHECK(std::abs(q.im() - a.im()) <= 1e-10 * scale);
                }
            }
        }
    }
}
