#pragma once

#include <array>
#include <string_view>
#include <utility>

// Areas of hyperbolic (curvature -1) triangles and quadrilaterals from side
// lengths, with the Euclidean counterparts.  Everything runs in long double:
// the half- and quarter-angle formulas lose digits through asin/acos near
// the ends of their range.

namespace curvavol {

enum class AreaFormula { SinHalf, TanQuarter, SinQuarter, Bilinski, GaussBonnet, Euclidean };

std::string_view to_string(AreaFormula f) noexcept;

struct AreaResult {
  long double value = 0.0L;
  AreaFormula formula = AreaFormula::SinHalf;
};

struct TriSides {
  long double a = 0.0L, b = 0.0L, c = 0.0L;

  long double s() const { return (a + b + c) / 2; }
  /// Throws NotATriangle unless all sides are positive and none exceeds the
  /// sum of the other two.
  void validate() const;
};

/// Sides in cyclic order.  Vertex A sits between d and a, B between a and b,
/// C between b and c, D between c and d.  Diagonal e = AC, f = BD.
struct QuadSides {
  long double a = 0.0L, b = 0.0L, c = 0.0L, d = 0.0L;

  long double s() const { return (a + b + c + d) / 2; }
  /// Throws NotAQuadrilateral on a negative side, more than one zero side,
  /// or a side longer than the sum of the others.
  void validate() const;
  /// Index of the single zero side, or -1.
  int zero_side() const;
  QuadSides rotated() const { return {b, c, d, a}; }
  QuadSides reversed() const { return {d, c, b, a}; }
};

struct QuadAngles {
  long double A = 0.0L, B = 0.0L, C = 0.0L, D = 0.0L;
};

/// sinh(x / 2)
long double half_sinh(long double x);

/// Angles opposite a, b, c by the hyperbolic law of cosines.
std::array<long double, 3> triangle_angles(const TriSides& t);

/// Hyperbolic triangle area by one of SinHalf (i), TanQuarter (ii),
/// SinQuarter (iii), Bilinski (iv) or GaussBonnet (pi minus the angles).
AreaResult triangle_area(const TriSides& t, AreaFormula formula);

/// S^2 = s (s - a)(s - b)(s - c).
long double heron_euclidean(long double a, long double b, long double c);

/// S^2 = (s - a)(s - b)(s - c)(s - d).
long double brahmagupta_euclidean(const QuadSides& q);

/// Diagonals (e, f) of the cyclic quadrilateral with these sides.
std::pair<long double, long double> cyclic_quad_diagonals(const QuadSides& q);

/// Interior angles of the cyclic quadrilateral; A + C = B + D.
QuadAngles cyclic_quad_angles(const QuadSides& q);

/// prod sinh(x / 2) / prod cosh((s - x) / 2) over the four sides.
long double epsilon_term(const QuadSides& q);

/// The same quantity as 1 - epsilon_term, written as a ratio of cosh products.
long double lemma_H(const QuadSides& q);

/// Area of the cyclic quadrilateral.  A single zero side reduces the
/// problem to a triangle.  Throws DomainError if a radicand is negative
/// beyond -1e-12 (side set not realizable).
AreaResult cyclic_quad_area(const QuadSides& q, AreaFormula formula);

/// Bicentric quadrilateral, sin^2(S/4) = prod tanh(x / 2).  Throws
/// NotBicentric unless a + c = b + d.
AreaResult bicentric_area(const QuadSides& q);

/// Hyperbolic trapezoid (angle sums at the ends of the legs equal).  The
/// legs are a and c, the bases b and d.  Throws ParallelSides when b = d
/// and NotRealizable on a negative radicand.
AreaResult trapezoid_area(const QuadSides& q);

/// Euclidean trapezoid with legs a, c and parallel sides b, d.
long double trapezoid_area_euclidean(long double a, long double b, long double c, long double d);

}  // namespace curvavol
