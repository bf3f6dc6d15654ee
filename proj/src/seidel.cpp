#include "curvavol/seidel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "curvavol/error.hpp"

namespace curvavol {

namespace {

constexpr double kPi = std::numbers::pi;

// Back-substitution tolerance for recovered angles.
constexpr double kSignatureTol = 1e-9;

/// Real roots of Y^3 + a2 Y^2 + a1 Y + a0, Newton-polished.  Near a double
/// root the discriminant can round to the wrong side, so the double-root
/// estimate is kept as a candidate too.
std::vector<double> cubic_real_roots(double a2, double a1, double a0) {
  const double q = (3.0 * a1 - a2 * a2) / 9.0;
  const double r = (9.0 * a2 * a1 - 27.0 * a0 - 2.0 * a2 * a2 * a2) / 54.0;
  const double disc = q * q * q + r * r;
  std::vector<double> roots;
  if (disc <= 0.0 && q < 0.0) {
    const double m = std::sqrt(-q);
    const double theta = std::acos(std::clamp(r / (m * m * m), -1.0, 1.0));
    for (int k = 0; k < 3; ++k) roots.push_back(2.0 * m * std::cos((theta + 2.0 * kPi * k) / 3.0) - a2 / 3.0);
  } else {
    const double sq = std::sqrt(std::max(disc, 0.0));
    const double s = std::cbrt(r + sq), t = std::cbrt(r - sq);
    roots.push_back(s + t - a2 / 3.0);
    roots.push_back(-0.5 * (s + t) - a2 / 3.0);
  }
  for (double& y : roots) {
    for (int it = 0; it < 4; ++it) {
      const double f = ((y + a2) * y + a1) * y + a0;
      const double df = (3.0 * y + 2.0 * a2) * y + a1;
      if (df == 0.0) break;
      y -= f / df;
    }
  }
  return roots;
}

double signature_residual(const GramSignature& a, const GramSignature& b) {
  return std::max(std::abs(a.det - b.det), std::abs(a.per - b.per));
}

}  // namespace

double permanent4(const Mat4& m) {
  std::array<int, 4> p{0, 1, 2, 3};
  double sum = 0.0;
  do {
    sum += m[0][p[0]] * m[1][p[1]] * m[2][p[2]] * m[3][p[3]];
  } while (std::next_permutation(p.begin(), p.end()));
  return sum;
}

double IdealAngles::C() const { return kPi - A - B; }

bool IdealAngles::obtuse() const { return C() > kPi / 2; }

void IdealAngles::validate() const {
  if (!(A > 0.0 && A <= B && B <= C())) {
    throw Error(ErrorCode::InvalidAngle, "ideal angles need 0 < A <= B <= C = pi - A - B");
  }
}

IdealAngles IdealAngles::from_unsorted(double a, double b, double c) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0) || std::abs(a + b + c - kPi) > 1e-10) {
    throw Error(ErrorCode::InvalidAngle, "ideal angles must be positive and sum to pi");
  }
  std::array<double, 3> v{a, b, c};
  std::sort(v.begin(), v.end());
  return {v[0], v[1]};
}

DihedralAngleSet IdealAngles::dihedral_angles() const {
  const double c = C();
  return {A, B, c, A, B, c};
}

GramMatrix ideal_gram(const IdealAngles& a) { return gram_from_angles(a.dihedral_angles()); }

GramSignature ideal_signature(const IdealAngles& a) {
  const double sa = std::sin(a.A), sb = std::sin(a.B), sab = std::sin(a.A + a.B);
  const double g = std::cos(a.A) * std::cos(a.B) * std::cos(a.A + a.B);
  return {-4.0 * sa * sa * sb * sb * sab * sab, 4.0 + 4.0 * g * g};
}

double cosine_permanent(const GramMatrix& G) {
  Mat4 m = G.entries();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) m[i][j] = -m[i][j];
  return permanent4(m);
}

SphericalFamilyMember spherical_family_member(double A, double c) {
  if (!(A > 0.0 && A < kPi)) throw Error(ErrorCode::InvalidAngle, "A must lie in (0, pi)");
  if (!(c > 0.0 && c < std::sin(A))) {
    throw Error(ErrorCode::DomainError, "need 0 < c < sin A");
  }
  const double D = std::asin(c / std::sin(A));
  SphericalFamilyMember m;
  m.angles = {A, kPi / 2, kPi / 2, D, kPi / 2, kPi / 2};
  m.volume = 0.5 * A * D;
  return m;
}

double hyperbolic_family_dDdA(const DihedralAngleSet& angles) {
  const GramMatrix G = gram_from_angles(angles);
  return -G.cofactor(0, 1) * std::sin(angles.A) / (G.cofactor(2, 3) * std::sin(angles.D));
}

DihedralAngleSet hyperbolic_family_member(const DihedralAngleSet& base, double A) {
  const double target = gram_from_angles(base).det();
  DihedralAngleSet t = base;
  t.A = A;
  DetQuadratic q = det_quadratic(t, Dihedral::D);
  q.gamma -= target;
  const double disc = q.beta * q.beta - 4.0 * q.alpha * q.gamma;
  if (q.alpha == 0.0 || disc < 0.0) {
    throw Error(ErrorCode::NoSolution, "det G cannot be held fixed at this A");
  }
  const double sq = std::sqrt(disc);
  const double w = -0.5 * (q.beta + std::copysign(sq, q.beta));
  const double u0 = std::cos(base.D);
  double best = std::numeric_limits<double>::quiet_NaN();
  for (double u : {w / q.alpha, w != 0.0 ? q.gamma / w : w / q.alpha}) {
    if (std::abs(u) >= 1.0) continue;
    if (std::isnan(best) || std::abs(u - u0) < std::abs(best - u0)) best = u;
  }
  if (std::isnan(best)) throw Error(ErrorCode::NoSolution, "det G cannot be held fixed at this A");
  t.D = std::acos(best);
  return t;
}

double hyperbolic_family_dVdA(const DihedralAngleSet& angles) {
  angles.validate();
  const GramMatrix G = gram_from_angles(angles);
  if (!classify(G).hyperbolic()) {
    throw Error(ErrorCode::NotCompactHyperbolic, "family derivative needs a compact hyperbolic tetrahedron");
  }
  const double k = std::sqrt(-G.det());
  const double tA = k * std::sin(angles.A) / G.cofactor(2, 3);
  const double tD = k * std::sin(angles.D) / G.cofactor(0, 1);
  const double lA = std::atanh(tA), lD = std::atanh(tD);
  return -0.5 * tA * (lA / tA - lD / tD);
}

IdealAngles recover_ideal_angles(const GramSignature& sig, bool obtuse) {
  // x = sin A sin B, y = cos A cos B, y - x = -cos C.  With s = y (y - x),
  // whose sign is the class, x = y - s / y and Y = y^2 solves
  // Y^3 - (s^2 + 2s + Q) Y^2 + (2s^3 + s^2) Y - s^4 = 0, Q = -det / 4.
  const double P = sig.per / 4.0 - 1.0;
  const double Q = -sig.det / 4.0;
  if (P < -1e-12 || Q < -1e-12) {
    throw Error(ErrorCode::NoSolution, "signature outside the ideal range");
  }
  const double s = std::copysign(std::sqrt(std::max(P, 0.0)), obtuse ? 1.0 : -1.0);
  const double s2 = s * s;
  const auto roots = cubic_real_roots(-(s2 + 2.0 * s + Q), 2.0 * s2 * s + s2, -s2 * s2);

  bool found = false;
  IdealAngles best;
  double best_res = kSignatureTol;
  for (double Y : roots) {
    if (!(Y > 0.0)) continue;
    const double y = std::sqrt(Y);
    const double x = y - s / y;
    const double cos_sum = y - x, cos_diff = x + y;
    if (std::abs(cos_sum) > 1.0 + 1e-12 || std::abs(cos_diff) > 1.0 + 1e-12) continue;
    const double sum = std::acos(std::clamp(cos_sum, -1.0, 1.0));
    const double diff = std::acos(std::clamp(cos_diff, -1.0, 1.0));
    IdealAngles a{0.5 * (sum - diff), 0.5 * (sum + diff)};
    if (!(a.A > 0.0) || a.B > a.C() + 1e-12) continue;
    if (a.B > a.C()) a.B = 0.5 * (kPi - a.A);
    if (a.obtuse() != obtuse && std::abs(a.C() - kPi / 2) > 1e-9) continue;
    const double res = signature_residual(ideal_signature(a), sig);
    if (res <= best_res) {
      best = a;
      best_res = res;
      found = true;
    }
  }
  if (!found) {
    throw Error(ErrorCode::NoSolution, std::string("no ") + (obtuse ? "obtuse" : "acute") +
                                           " ideal tetrahedron has this signature");
  }
  return best;
}

}  // namespace curvavol
