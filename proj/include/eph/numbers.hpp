#pragma once

#include <iosfwd>
#include <string_view>

namespace eph {

/// The sign of the imaginary unit's square, i^2 = sigma.
enum class GeometryKind : int { Elliptic = -1, Parabolic = 0, Hyperbolic = 1 };

constexpr int sigma(GeometryKind kind) noexcept { return static_cast<int>(kind); }

/// Throws Error(InvalidArgument) unless s is -1, 0 or 1.
GeometryKind geometry_from_sigma(int s);
std::string_view to_string(GeometryKind kind) noexcept;

/// A point (u, v) of the plane; v > 0 is the upper half-plane.
struct Point {
    double u = 0.0;
    double v = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Invertibility threshold for division.
inline constexpr double kDivisionEpsilon = 1e-12;

/// A complex (sigma = -1), dual (sigma = 0) or double (sigma = +1) number
/// re + i im with i^2 = sigma.
class HNumber {
public:
    constexpr HNumber() = default;
    constexpr HNumber(double re, double im, GeometryKind kind) : re_(re), im_(im), kind_(kind) {}
    constexpr HNumber(Point p, GeometryKind kind) : re_(p.u), im_(p.v), kind_(kind) {}

    static constexpr HNumber real(double x, GeometryKind kind) { return {x, 0.0, kind}; }
    static constexpr HNumber unit(GeometryKind kind) { return {0.0, 1.0, kind}; }

    constexpr double re() const noexcept { return re_; }
    constexpr double im() const noexcept { return im_; }
    constexpr GeometryKind kind() const noexcept { return kind_; }
    constexpr Point point() const noexcept { return {re_, im_}; }

    /// re - i im; z * conj(z) = modulus_sq(z).
    constexpr HNumber conj() const noexcept { return {re_, -im_, kind_}; }

    /// True when z can be divided by, per the kind's zero-divisor test.
    bool invertible() const noexcept;

    friend HNumber operator+(const HNumber& a, const HNumber& b);
    friend HNumber operator-(const HNumber& a, const HNumber& b);
    friend HNumber operator*(const HNumber& a, const HNumber& b);
    /// Throws Error(ZeroDivisor) when b is not invertible.
    friend HNumber operator/(const HNumber& a, const HNumber& b);
    friend constexpr HNumber operator-(const HNumber& a) noexcept { return {-a.re_, -a.im_, a.kind_}; }
    friend constexpr HNumber operator*(double s, const HNumber& a) noexcept {
        return {s * a.re_, s * a.im_, a.kind_};
    }

    friend bool operator==(const HNumber&, const HNumber&) = default;

private:
    double re_ = 0.0;
    double im_ = 0.0;
    GeometryKind kind_ = GeometryKind::Elliptic;
};

/// |z|^2_sigma = re^2 - sigma im^2. Negative for time-like double numbers.
constexpr double modulus_sq(const HNumber& z) noexcept {
    return z.re() * z.re() - sigma(z.kind()) * z.im() * z.im();
}

std::ostream& operator<<(std::ostream& os, const HNumber& z);
std::ostream& operator<<(std::ostream& os, const Point& p);

}  // namespace eph
