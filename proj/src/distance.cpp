#include "eph/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "eph/error.hpp"

namespace eph {

namespace {

constexpr double kTableSlack = 1e-12;
constexpr double kLightLikeTolerance = 1e-12;

void require_upper(const HNumber& z, const HNumber& w) {
    if (!(z.im() > 0.0) || !(w.im() > 0.0)) {
        throw Error(ErrorCode::NotInUpperHalfPlane, "both points need a positive imaginary part");
    }
}

}  // namespace

Relabel Relabel::scaled(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
    }
    Relabel r(Kind::Scale);
    r.scale_ = c;
    return r;
}

Relabel Relabel::table(std::vector<double> xs, std::vector<double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "relabel table needs matching x and y with at least two rows");
    }
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] > xs[i - 1])) {
            throw Error(ErrorCode::InvalidArgument, "relabel table x values must be strictly increasing");
        }
        if (ys[i] - ys[i - 1] < -kTableSlack) {
            throw Error(ErrorCode::NonMonotoneSamples, "relabel table y values decrease");
        }
    }
    Relabel r(Kind::Table);
    r.xs_ = std::move(xs);
    r.ys_ = std::move(ys);
    return r;
}

double Relabel::operator()(double t) const {
    switch (kind_) {
        case Kind::Identity: return t;
        case Kind::Scale: return scale_ * t;
        case Kind::SinhInv: return std::asinh(t);
        case Kind::SinInv:
            if (t > 1.0) {
                throw Error(ErrorCode::DomainExceeded, "asin label needs t <= 1");
            }
            return std::asin(t);
        case Kind::Table: {
            if (t < xs_.front() || t > xs_.back()) {
                throw Error(ErrorCode::DomainExceeded, "relabel table evaluated outside its range");
            }
            auto it = std::upper_bound(xs_.begin(), xs_.end(), t);
            std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - xs_.begin()), xs_.size() - 1);
            i = std::max<std::size_t>(i, 1);
            const double s = (t - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
            return ys_[i - 1] + s * (ys_[i] - ys_[i - 1]);
        }
    }
    return t;
}

double Relabel::domain_max() const {
    switch (kind_) {
        case Kind::SinInv: return 1.0;
        case Kind::Table: return xs_.back();
        default: return std::numeric_limits<double>::infinity();
    }
}

std::string Relabel::name() const {
    switch (kind_) {
        case Kind::Identity: return "identity";
        case Kind::Scale: {
            std::ostringstream os;
            os << "scale(" << scale_ << ")";
            return os.str();
        }
        case Kind::SinhInv: return "asinh";
        case Kind::SinInv: return "asin";
        case Kind::Table: return "table(" + std::to_string(xs_.size()) + ")";
    }
    return "?";
}

void Relabel::validate(double cap) const {
    const double top = std::min(domain_max(), cap);
    if (std::abs((*this)(0.0)) > kTableSlack) {
        throw Error(ErrorCode::NonMonotoneSamples, "relabel must satisfy h(0) = 0");
    }
    constexpr int kSamples = 1000;
    const double slack = kind_ == Kind::Table ? -kTableSlack : 0.0;
    double prev = (*this)(0.0);
    for (int j = 1; j < kSamples; ++j) {
        const double y = (*this)(top * j / kSamples);
        if (!(y - prev > slack)) {
            throw Error(ErrorCode::NonMonotoneSamples, "relabel " + name() + " is not increasing");
        }
        prev = y;
    }
}

std::string_view to_string(IntervalType t) noexcept {
    switch (t) {
        case IntervalType::SpaceLike: return "space-like";
        case IntervalType::TimeLike: return "time-like";
        case IntervalType::LightLike: return "light-like";
    }
    return "?";
}

IntervalType interval_type(const HNumber& z, const HNumber& w) {
    const double du = z.re() - w.re(), dv = z.im() - w.im();
    const double q = du * du - dv * dv;
    if (std::abs(q) <= kLightLikeTolerance) {
        return IntervalType::LightLike;
    }
    return q > 0 ? IntervalType::SpaceLike : IntervalType::TimeLike;
}

double invariant_F(const HNumber& z, const HNumber& w) {
    require_upper(z, w);
    return std::sqrt(std::abs(modulus_sq(z - w))) / std::sqrt(z.im() * w.im());
}

double sin_inv_flavor(ParabolicFlavor flavor, double t) {
    switch (flavor.value()) {
        case -1: return std::asinh(t);
        case 0: return 2 * t;
        default:
            if (std::abs(t) > 1.0) {
                throw Error(ErrorCode::DomainExceeded, "hyperbolic inverse sine needs |t| <= 1");
            }
            return std::asin(t);
    }
}

DistanceResult distance(const DistanceSpec& spec, const HNumber& z, const HNumber& w) {
    if (z.kind() != spec.geometry || w.kind() != spec.geometry) {
        throw std::logic_error("distance: point kind differs from the spec geometry");
    }
    const double half_f = invariant_F(z, w) / 2;
    DistanceResult r;
    switch (spec.geometry) {
        case GeometryKind::Elliptic: r.core = std::asinh(half_f); break;
        case GeometryKind::Parabolic:
            r.core = sin_inv_flavor(spec.flavor, half_f);
            r.vertical_degenerate = z.re() == w.re() && z.im() != w.im();
            break;
        case GeometryKind::Hyperbolic:
            r.interval = interval_type(z, w);
            switch (*r.interval) {
                case IntervalType::LightLike: r.core = 0.0; break;
                case IntervalType::SpaceLike: r.core = sin_inv_flavor(ParabolicFlavor::hyperbolic(), half_f); break;
                case IntervalType::TimeLike: r.core = std::asinh(half_f); break;
            }
            break;
    }
    r.value = spec.label(r.core);
    return r;
}

DistanceResult distance(const DistanceSpec& spec, Point z, Point w) {
    return distance(spec, HNumber(z, spec.geometry), HNumber(w, spec.geometry));
}

HNumber cayley(const HNumber& w, ParabolicFlavor flavor) {
    if (w.kind() != GeometryKind::Parabolic) {
        throw Error(ErrorCode::InvalidArgument, "the Cayley transform acts on dual numbers");
    }
    const HNumber e = HNumber::unit(GeometryKind::Parabolic);
    const HNumber two = HNumber::real(2.0, GeometryKind::Parabolic);
    return (2.0 * w - e) / (static_cast<double>(flavor.value()) * (e * w) + two);
}

HNumber cayley_inverse(const HNumber& w, ParabolicFlavor flavor) {
    if (w.kind() != GeometryKind::Parabolic) {
        throw Error(ErrorCode::InvalidArgument, "the Cayley transform acts on dual numbers");
    }
    const HNumber e = HNumber::unit(GeometryKind::Parabolic);
    const HNumber two = HNumber::real(2.0, GeometryKind::Parabolic);
    return (2.0 * w + e) / (two - static_cast<double>(flavor.value()) * (e * w));
}

double disk_distance(ParabolicFlavor flavor, Point p1, Point p2) {
    const double s = flavor.value();
    const double r1 = 1 + 2 * p1.v + s * p1.u * p1.u;
    const double r2 = 1 + 2 * p2.v + s * p2.u * p2.u;
    if (!(r1 > 0.0) || !(r2 > 0.0)) {
        throw Error(ErrorCode::OutsideDisk, "point outside the parabolic disc");
    }
    return sin_inv_flavor(flavor, 2 * std::abs(p2.u - p1.u) / (2 * std::sqrt(r1 * r2)));
}

MonotoneFit relabeled_equals(std::span<const DistanceSample> samples, const DistanceSpec& spec) {
    struct Row {
        double x, f;
    };
    const DistanceSpec core_spec{spec.geometry, spec.flavor, Relabel::identity()};
    std::vector<Row> rows;
    rows.reserve(samples.size());
    MonotoneFit fit;
    for (const auto& s : samples) {
        const double x = distance(core_spec, s.z, s.w).core;
        rows.push_back({x, s.f});
        try {
            fit.label_residual = std::max(fit.label_residual, std::abs(spec.label(x) - s.f));
        } catch (const Error&) {
            fit.label_residual = std::numeric_limits<double>::infinity();
        }
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.x < b.x; });

    // merge equal core values
    std::vector<double> xs, ys;
    for (const auto& r : rows) {
        if (!xs.empty() && std::abs(r.x - xs.back()) <= 1e-12 * std::max(1.0, std::abs(r.x))) {
            if (std::abs(r.f - ys.back()) > 1e-9 * std::max(1.0, std::abs(r.f))) {
                throw Error(ErrorCode::NonMonotoneSamples, "equal core distances with different values");
            }
            continue;
        }
        xs.push_back(r.x);
        ys.push_back(r.f);
    }
    if (xs.size() < 10) {
        throw Error(ErrorCode::InsufficientSamples, "need at least 10 distinct core distances");
    }
    for (std::size_t i = 1; i < ys.size(); ++i) {
        if (!(ys[i] > ys[i - 1] - kTableSlack)) {
            throw Error(ErrorCode::NonMonotoneSamples, "samples decrease as the core distance grows");
        }
    }
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        const double s = (xs[i] - xs[i - 1]) / (xs[i + 1] - xs[i - 1]);
        const double interp = ys[i - 1] + s * (ys[i + 1] - ys[i - 1]);
        fit.residual = std::max(fit.residual, std::abs(interp - ys[i]));
    }
    fit.h = Relabel::table(std::move(xs), std::move(ys));
    fit.monotone = true;
    return fit;
}

}  // namespace eph
