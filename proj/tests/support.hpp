#pragma once

// Random instance generators shared by the test binaries.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "curvavol/gram.hpp"
#include "curvavol/models.hpp"

namespace testsupport {

using namespace curvavol;

// Four points uniform in the Klein ball of radius R, not too flat.
inline KleinTetrahedron random_klein(std::mt19937_64& rng, double R = 0.9) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u;
  for (;;) {
    KleinTetrahedron t;
    for (auto& p : t.v) {
      const double x = g(rng), y = g(rng), z = g(rng);
      const double r = R * std::cbrt(u(rng)) / std::sqrt(x * x + y * y + z * z);
      p = {x * r, y * r, z * r};
    }
    if (t.euclidean_volume() > 2e-3 * R * R * R) return t;
  }
}

// Slivers (angles within 0.1 of 0 or pi) are skipped: their det G is ~1e-9
// and the integrands are dominated by cancellation noise.
inline bool well_shaped(const DihedralAngleSet& t) {
  for (double a : {t.A, t.B, t.C, t.D, t.E, t.F})
    if (a < 0.1 || a > 3.04) return false;
  return true;
}

inline DihedralAngleSet random_hyperbolic(std::mt19937_64& rng, double R = 0.9) {
  for (;;) {
    const auto angles = dihedral_angles_from_vertices(random_klein(rng, R));
    if (well_shaped(angles) && classify(gram_from_angles(angles)).hyperbolic()) return angles;
  }
}

// Vertices are four random unit vectors of R^4; normals are the dual basis.
inline DihedralAngleSet random_spherical(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  for (;;) {
    Eigen::Matrix4d P;
    for (int i = 0; i < 4; ++i) {
      for (int c = 0; c < 4; ++c) P(i, c) = g(rng);
      P.row(i).normalize();
    }
    if (std::abs(P.determinant()) < 0.1) continue;
    Eigen::Matrix4d N = P.inverse().transpose();
    for (int i = 0; i < 4; ++i) N.row(i).normalize();
    Mat4 theta{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) theta[i][j] = std::acos(std::clamp(-N.row(i).dot(N.row(j)), -1.0, 1.0));
    const auto angles = DihedralAngleSet::from_face_angles(theta);
    if (well_shaped(angles) && classify(gram_from_angles(angles)).spherical()) return angles;
  }
}

// Random rotation times boosts.
inline Eigen::Matrix4d random_lorentz(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(m);
  Eigen::Matrix3d q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  std::uniform_real_distribution<double> rap(-0.8, 0.8);
  return lorentz_rotation(q) * lorentz_boost(rap(rng), 1) * lorentz_boost(rap(rng), 3);
}

}  // namespace testsupport
