#pragma once

#include <array>
#include <string>

namespace curvavol {

using Mat4 = std::array<std::array<double, 4>, 4>;

/// Names of the six dihedral angles.  A, B, C sit at the three edges through
/// one vertex; D, E, F are the angles at the opposite edges, in that order.
enum class Dihedral { A, B, C, D, E, F };

/// Vertices and faces are numbered 0..3; face i is opposite vertex i.  The
/// angle between faces i and j sits on the edge joining the other two vertices.
struct VertexPair {
  int i, j;
};

/// Edge (vertex pair) carrying a given dihedral angle.
VertexPair edge_of(Dihedral which);

struct DihedralAngleSet {
  double A, B, C, D, E, F;

  double get(Dihedral which) const;
  void set(Dihedral which, double value);

  /// Interior angle between faces i and j (i != j).
  double between_faces(int i, int j) const;
  /// Interior angle at the edge joining vertices i and j (i != j).
  double at_edge(int i, int j) const;

  /// Inverse of between_faces; only the off-diagonal entries are read.
  static DihedralAngleSet from_face_angles(const Mat4& theta);

  /// Relabel vertices: old vertex k becomes new vertex perm[k].
  DihedralAngleSet relabeled(const std::array<int, 4>& perm) const;

  /// Throws InvalidAngle unless every angle lies in (0, pi).
  void validate() const;
};

/// Essential-angle convention for orthoschemes: the Gram matrix is tridiagonal
/// with -cos A, -cos B, -cos C at face pairs (0,1), (1,2), (2,3); every other
/// dihedral angle is pi/2.
DihedralAngleSet orthoscheme_angles(double A, double B, double C);

/// Determinant of a 3x3 block given as rows.
double det3(const std::array<std::array<double, 3>, 3>& m);

/// Signed cofactor (-1)^(i+j) det(minor_ij) from the explicit 3x3 minor.
double cofactor(const Mat4& m, int i, int j);

class GramMatrix {
 public:
  /// Takes entries as given; symmetry and the unit diagonal are the caller's
  /// responsibility (gram_from_angles guarantees both).
  static GramMatrix from_entries(const Mat4& entries);

  const Mat4& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_[i][j]; }
  double det() const { return det_; }
  const Mat4& cofactors() const { return cofactors_; }
  double cofactor(int i, int j) const { return cofactors_[i][j]; }

 private:
  Mat4 entries_{};
  Mat4 cofactors_{};
  double det_ = 0.0;
};

GramMatrix gram_from_angles(const DihedralAngleSet& angles);

/// Matrix of signed cofactors, computed from explicit minors so it stays
/// valid at det G = 0.
Mat4 cofactors(const GramMatrix& G);

struct TetraClass {
  enum class Kind { CompactHyperbolic, Spherical, Invalid };
  Kind kind = Kind::Invalid;
  std::string reason;  // set when Invalid

  bool hyperbolic() const { return kind == Kind::CompactHyperbolic; }
  bool spherical() const { return kind == Kind::Spherical; }
};

/// Compact hyperbolic: det < 0, every c_ii > 0 and every c_ij > 0.
/// Spherical: det > 0 and every c_ii > 0.  These are necessary conditions;
/// they are used as the acceptance predicate without a claim of sufficiency.
TetraClass classify(const GramMatrix& G);

/// Edge lengths indexed by vertex pair (curvature +-1 units).
struct EdgeLengthSet {
  std::array<double, 6> lengths{};  // (0,1) (0,2) (0,3) (1,2) (1,3) (2,3)

  double operator()(int i, int j) const;
  double& operator()(int i, int j);
  double at(Dihedral which) const;

  static int slot(int i, int j);
};

/// cosh l_ij = c_ij / sqrt(c_ii c_jj) in H^3, cos l_ij = ... in S^3.
EdgeLengthSet edge_lengths(const GramMatrix& G, const TetraClass& cls);

/// det G as a quadratic in u = cos(angle): det = alpha u^2 + beta u + gamma.
struct DetQuadratic {
  double alpha, beta, gamma;
  double operator()(double u) const { return (alpha * u + beta) * u + gamma; }
};

DetQuadratic det_quadratic(const DihedralAngleSet& angles, Dihedral which);
DetQuadratic detG_as_function_of_A(const DihedralAngleSet& angles);

}  // namespace curvavol
