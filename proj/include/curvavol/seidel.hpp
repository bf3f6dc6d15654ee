#pragma once

#include "curvavol/gram.hpp"

namespace curvavol {

/// Permanent of a 4x4 matrix by full expansion over the 24 permutations.
double permanent4(const Mat4& m);

/// Dihedral angles of an ideal tetrahedron, opposite angles equal and
/// A + B + C = pi.  Sorted: 0 < A <= B <= C.
struct IdealAngles {
  double A = 0.0;
  double B = 0.0;

  double C() const;
  /// C > pi/2.  A and B are always acute under the ordering.
  bool obtuse() const;
  /// Throws InvalidAngle unless 0 < A <= B <= C.
  void validate() const;
  /// Sorts any three positive angles summing to pi into canonical order.
  static IdealAngles from_unsorted(double a, double b, double c);
  DihedralAngleSet dihedral_angles() const;
};

struct GramSignature {
  double det = 0.0;
  double per = 0.0;
};

GramMatrix ideal_gram(const IdealAngles& a);

/// det G = -4 sin^2 A sin^2 B sin^2(A+B), per = 4 + 4 cos^2 A cos^2 B cos^2(A+B).
/// The per closed form is the permanent of 2I - G (off-diagonal +cos); the
/// permanent of G itself has an extra 16 cos A cos B cos(A+B).  All
/// signature-based operations use the closed form.
GramSignature ideal_signature(const IdealAngles& a);

/// Permanent of 2I - G, which matches the per closed form on ideal instances.
double cosine_permanent(const GramMatrix& G);

struct SphericalFamilyMember {
  DihedralAngleSet angles;
  double volume = 0.0;
};

/// T(A, D) with D = asin(c / sin A) and every other angle pi/2, so that
/// det G = c^2 and V = A D / 2.
SphericalFamilyMember spherical_family_member(double A, double c);

/// Slope dD/dA keeping det G fixed: -c01 sin A / (c23 sin D).
double hyperbolic_family_dDdA(const DihedralAngleSet& angles);

/// Member of the constant-determinant family through `base` with angle A
/// replaced by `A`; D is the root of det G = det G(base) nearest base.D.
/// Throws NoSolution when no such root exists.
DihedralAngleSet hyperbolic_family_member(const DihedralAngleSet& base, double A);

/// dV/dA along the constant-determinant family:
/// -(tanh l_A / 2) (l_A / tanh l_A - l_D / tanh l_D).
double hyperbolic_family_dVdA(const DihedralAngleSet& angles);

/// Ideal angles with the given determinant and permanent in the acute
/// (C < pi/2) or obtuse (C > pi/2) class.  Throws NoSolution when no
/// admissible root exists.
IdealAngles recover_ideal_angles(const GramSignature& sig, bool obtuse);

}  // namespace curvavol
