#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eph/numbers.hpp"

namespace eph {

/// Parabolic sub-flavour: -1 (P_e), 0 (P_p), +1 (P_h). Independent of the
/// geometry kind.
class ParabolicFlavor {
public:
    constexpr ParabolicFlavor() = default;
    /// Throws Error(InvalidArgument) unless s is -1, 0 or 1.
    explicit ParabolicFlavor(int s);

    static constexpr ParabolicFlavor elliptic() { return ParabolicFlavor(Tag{}, -1); }
    static constexpr ParabolicFlavor parabolic() { return ParabolicFlavor(Tag{}, 0); }
    static constexpr ParabolicFlavor hyperbolic() { return ParabolicFlavor(Tag{}, 1); }

    constexpr int value() const noexcept { return value_; }
    friend constexpr bool operator==(ParabolicFlavor, ParabolicFlavor) = default;

private:
    struct Tag {};
    constexpr ParabolicFlavor(Tag, int s) : value_(s) {}
    int value_ = 0;
};

std::string to_string(ParabolicFlavor flavor);

/// Which quadratic term k multiplies.
enum class QuadraticMode {
    Parabola,   // k u^2
    Circle,     // k (u^2 + v^2)
    Hyperbola,  // k (u^2 - v^2)
};

/// The curve k Q(u, v) - 2 l u - 2 n v + m = 0, Q chosen by mode.
/// Quadruples differing by a nonzero factor are the same cycle.
struct Cycle {
    double k = 0.0;
    double l = 0.0;
    double n = 0.0;
    double m = 0.0;
    QuadraticMode mode = QuadraticMode::Parabola;
    /// Set on vertical lines returned for pairs with equal real parts.
    bool degenerate = false;

    /// Scaled so the largest-magnitude coefficient is +1.
    Cycle canonical() const;
    /// Coefficients agree after canonicalization, to tol.
    bool same_as(const Cycle& other, double tol = 1e-9) const;
    /// "(k,[l,n],m)"
    std::string label(int precision = 3) const;
};

std::ostream& operator<<(std::ostream& os, const Cycle& c);

double eval_cycle(const Cycle& c, Point p);

/// eval_cycle of the canonical form; comparable across scalings.
double cycle_residual(const Cycle& c, Point p);

/// (flavor + 4t^2) u^2 - 8t u - 4v + 4 = 0: the geodesics through i.
Cycle geodesic_family(ParabolicFlavor flavor, double t);

/// (u^2 + v^2) sin 2t - 2u cos 2t - sin 2t = 0.
Cycle elliptic_geodesic_through_i(double t);

struct HyperbolicGeodesics {
    Cycle spacelike;  // u^2 - v^2 - 2t u + 1 = 0
    Cycle timelike;   // (u^2 - v^2) sinh 2t - 2u cosh 2t + sinh 2t = 0
};
HyperbolicGeodesics hyperbolic_geodesics_through_i(double t);

/// l^2 + flavor n^2 - m k, after canonical scaling.
double f_orthogonality_defect(const Cycle& c, ParabolicFlavor flavor);
bool is_f_orthogonal(const Cycle& c, ParabolicFlavor flavor);

/// The cycle through the image points of c under w -> (w - shift) / scale
/// composed inversely: given a cycle in coordinates (U, V) with
/// U = (u - u0) / v0, V = v / v0, returns it in (u, v). Parabola mode only.
Cycle affine_pullback(const Cycle& c, Point origin);

struct PairGeodesic {
    Cycle cycle;
    /// Family parameter after moving w1 to i; NaN for the vertical line.
    double t = 0.0;
    /// True for the root whose arc joins the points without touching the
    /// real axis (the smaller |t|).
    bool connecting = false;
};

/// Family members through w1 and w2: 2 cycles, 1 on a double root, or the
/// vertical line (flagged degenerate) when Re w1 = Re w2.
/// Throws Error(NoRealSolution) when the quadratic for t has no real root.
std::vector<PairGeodesic> geodesics_through_pair(Point w1, Point w2, ParabolicFlavor flavor);

enum class FocusNotion { UsualFocus, Vertex, DirectrixNearest };

/// Focus, vertex or nearest directrix point of the graph
/// v = (k u^2 - 2 l u + m) / (2n). Throws Error(DegenerateCycle) when the
/// cycle is not such a parabola.
Point parabola_focus(const Cycle& c, FocusNotion notion);

/// The parameter interval around u = 0 on which geodesic_family(flavor, t)
/// is a geodesic arc from i: v > 0 and 1 - t u > 0, clipped to |u| <= limit.
struct Interval {
    double lo;
    double hi;
};
Interval family_arc(ParabolicFlavor flavor, double t, double limit);

/// Height of the parabola-mode cycle above u (n != 0).
std::optional<double> parabola_height(const Cycle& c, double u);

}  // namespace eph
