#include "eph/numbers.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "eph/error.hpp"

namespace eph {

namespace {

void require_same_kind(const HNumber& a, const HNumber& b) {
    if (a.kind() != b.kind()) {
        throw std::logic_error("HNumber arithmetic between different number systems");
    }
}

}  // namespace

GeometryKind geometry_from_sigma(int s) {
    if (s < -1 || s > 1) {
        throw Error(ErrorCode::InvalidArgument, "sigma must be -1, 0 or 1, got " + std::to_string(s));
    }
    return static_cast<GeometryKind>(s);
}

std::string_view to_string(GeometryKind kind) noexcept {
    switch (kind) {
        case GeometryKind::Elliptic: return "elliptic";
        case GeometryKind::Parabolic: return "parabolic";
        case GeometryKind::Hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

bool HNumber::invertible() const noexcept {
    switch (kind_) {
        case GeometryKind::Elliptic: return std::hypot(re_, im_) > kDivisionEpsilon;
        case GeometryKind::Parabolic: return std::abs(re_) > kDivisionEpsilon;
        case GeometryKind::Hyperbolic: return std::abs(std::abs(re_) - std::abs(im_)) > kDivisionEpsilon;
    }
    return false;
}

HNumber operator+(const HNumber& a, const HNumber& b) {
    require_same_kind(a, b);
    return {a.re_ + b.re_, a.im_ + b.im_, a.kind_};
}

HNumber operator-(const HNumber& a, const HNumber& b) {
    require_same_kind(a, b);
    return {a.re_ - b.re_, a.im_ - b.im_, a.kind_};
}

HNumber operator*(const HNumber& a, const HNumber& b) {
    require_same_kind(a, b);
    const double s = sigma(a.kind_);
    return {a.re_ * b.re_ + s * a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_, a.kind_};
}

HNumber operator/(const HNumber& a, const HNumber& b) {
    require_same_kind(a, b);
    if (!b.invertible()) {
        throw Error(ErrorCode::ZeroDivisor, "divisor is not invertible");
    }
    // a / b = a conj(b) / (b conj(b)), and b conj(b) is real.
    const HNumber num = a * b.conj();
    const double den = modulus_sq(b);
    return {num.re_ / den, num.im_ / den, a.kind_};
}

std::ostream& operator<<(std::ostream& os, const HNumber& z) {
    const char* unit = z.kind() == GeometryKind::Elliptic ? "i" : z.kind() == GeometryKind::Parabolic ? "e" : "j";
    return os << z.re() << (z.im() < 0 ? " - " : " + ") << std::abs(z.im()) << unit;
}

std::ostream& operator<<(std::ostream& os, const Point& p) { return os << '(' << p.u << ", " << p.v << ')'; }

}  // namespace eph
