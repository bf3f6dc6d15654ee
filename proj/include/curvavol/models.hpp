#pragma once

#include <Eigen/Core>
#include <array>
#include <cstddef>
#include <cstdint>

#include "curvavol/gram.hpp"

namespace curvavol {

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;

/// -x0 y0 + x1 y1 + x2 y2 + x3 y3
double minkowski_dot(const Vec4& x, const Vec4& y);

/// Point on the upper sheet of the hyperboloid <x, x> = -1.
struct MinkowskiPoint {
  Vec4 x{1.0, 0.0, 0.0, 0.0};

  static MinkowskiPoint from_klein(const Vec3& k);
  Vec3 klein() const;
  /// | <x, x> + 1 |
  double normalization_residual() const;
};

double hyperbolic_distance(const MinkowskiPoint& p, const MinkowskiPoint& q);

/// Angle at p of the geodesic triangle p q r.
double angle_at(const MinkowskiPoint& p, const MinkowskiPoint& q, const MinkowskiPoint& r);

struct KleinTetrahedron {
  std::array<Vec3, 4> v{};

  /// Throws NotRealizable unless all |v| < 1 and the simplex is not flat.
  void validate() const;
  double euclidean_volume() const;
  MinkowskiPoint vertex(int i) const { return MinkowskiPoint::from_klein(v[i]); }
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Bolyai data of an orthoscheme P0 P1 P2 P3 with P0P1, P1P2, P2P3 mutually
/// orthogonal: alpha at P1 in P1P2P3, beta at P0 in P0P1P2, gamma at P0 in
/// P0P2P3, z = |P2P3|.
struct BolyaiParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double z = 0.0;
};

/// Vertices whose pairwise distances are the given lengths.  Throws
/// NotRealizable when -cosh(l_ij) is not of Lorentzian signature.
KleinTetrahedron embed_from_edge_lengths(const EdgeLengthSet& lengths);

/// Interior dihedral angles, labeled as in DihedralAngleSet (face i opposite vertex i).
DihedralAngleSet dihedral_angles_from_vertices(const KleinTetrahedron& t);

EdgeLengthSet edge_lengths_from_vertices(const KleinTetrahedron& t);

/// gamma is fixed by (alpha, beta, z): tan gamma = tanh z / sinh d02.
double bolyai_gamma(double alpha, double beta, double z);

KleinTetrahedron orthoscheme_from_bolyai_params(double alpha, double beta, double gamma, double z);

BolyaiParams bolyai_params(const KleinTetrahedron& orthoscheme);

/// Hyperbolic volume by uniform sampling of the Klein simplex, weighted by
/// (1 - |x|^2)^-2.  The result depends only on (samples, seed), not on threads.
McEstimate mc_volume(const KleinTetrahedron& t, std::size_t samples, std::uint64_t seed,
                     unsigned threads = 1);

/// Lorentz boost along a spatial axis (1..3).
Eigen::Matrix4d lorentz_boost(double rapidity, int axis);

/// Spatial rotation embedded in SO(1, 3).
Eigen::Matrix4d lorentz_rotation(const Eigen::Matrix3d& rotation);

/// Isometry taking p to (1, 0, 0, 0).
Eigen::Matrix4d boost_to_origin(const MinkowskiPoint& p);

KleinTetrahedron transformed(const KleinTetrahedron& t, const Eigen::Matrix4d& lorentz);

/// Moves the hyperbolic centroid of the vertices to the origin.
KleinTetrahedron centered(const KleinTetrahedron& t);

}  // namespace curvavol
