#include "curvavol/tetvol.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "curvavol/error.hpp"

namespace curvavol {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSignSamples = 64;

/// Gram entries with the A slot overwritten by -cos(a).
Mat4 entries_with_A(const Mat4& base, double a) {
  Mat4 m = base;
  m[0][1] = m[1][0] = -std::cos(a);
  return m;
}

/// Real roots of alpha u^2 + beta u + gamma within [-1, 1].
std::vector<double> unit_roots(const DetQuadratic& q) {
  std::vector<double> roots;
  const double scale = std::abs(q.alpha) + std::abs(q.beta) + std::abs(q.gamma);
  if (scale == 0.0) return roots;
  if (std::abs(q.alpha) <= 1e-14 * scale) {
    if (q.beta != 0.0) roots.push_back(-q.gamma / q.beta);
  } else {
    double disc = q.beta * q.beta - 4.0 * q.alpha * q.gamma;
    if (disc < 0.0) {
      if (disc < -1e-14 * scale * scale) return roots;
      disc = 0.0;
    }
    const double sq = std::sqrt(disc);
    const double t = -0.5 * (q.beta + std::copysign(sq, q.beta));
    roots.push_back(t / q.alpha);
    if (t != 0.0) roots.push_back(q.gamma / t);
  }
  std::vector<double> inside;
  for (double u : roots) {
    if (std::abs(u) <= 1.0 + 1e-12) inside.push_back(std::clamp(u, -1.0, 1.0));
  }
  return inside;
}

double hyperbolic_half_length(const Mat4& base, const DetQuadratic& q, double a) {
  const double minus_det = std::max(0.0, -q(std::cos(a)));
  const double c34 = cofactor(entries_with_A(base, a), 2, 3);
  const double r = std::sqrt(minus_det) * std::sin(a);
  if (!(c34 > 0.0) || !(r < c34)) {
    throw Error(ErrorCode::IntegrandSignError,
                "Sforza log argument not positive at A = " + std::to_string(a));
  }
  return 0.5 * std::atanh(r / c34);
}

double spherical_half_length(const Mat4& base, const DetQuadratic& q, double a) {
  const double det = std::max(0.0, q(std::cos(a)));
  const double c34 = cofactor(entries_with_A(base, a), 2, 3);
  return 0.5 * std::atan2(std::sqrt(det) * std::sin(a), c34);
}

}  // namespace

std::string_view to_string(VolumeMethod method) noexcept {
  switch (method) {
    case VolumeMethod::CayleyMenger: return "cayley_menger";
    case VolumeMethod::Milnor: return "milnor";
    case VolumeMethod::LogRatioIntegral: return "dm";
    case VolumeMethod::SforzaH3: return "sforza_h3";
    case VolumeMethod::SforzaS3: return "sforza_s3";
    case VolumeMethod::SchlafliSeries: return "schlafli";
    case VolumeMethod::Bolyai: return "bolyai";
  }
  return "unknown";
}

std::string_view to_string(Space space) noexcept {
  switch (space) {
    case Space::E3: return "E3";
    case Space::S3: return "S3";
    case Space::H3: return "H3";
  }
  return "unknown";
}

VolumeResult volume_euclidean_cm(const EdgeLengthSet& d) {
  double longest = 0.0;
  for (double len : d.lengths) {
    if (!(len > 0.0)) throw Error(ErrorCode::DomainError, "edge lengths must be positive");
    longest = std::max(longest, len);
  }
  Eigen::Matrix<double, 5, 5> cm;
  cm.setZero();
  for (int i = 1; i < 5; ++i) cm(0, i) = cm(i, 0) = 1.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      cm(i + 1, j + 1) = cm(j + 1, i + 1) = d(i, j) * d(i, j);
    }
  }
  const double det = cm.determinant();
  const double scale = std::pow(longest, 6);
  if (det < -1e-12 * std::max(1.0, scale)) {
    throw Error(ErrorCode::NotRealizable, "Cayley-Menger determinant is negative");
  }
  const double value = std::sqrt(std::max(det, 0.0) / 288.0);
  const double err = 1e-15 * std::sqrt(std::max(1.0, scale));
  return {value, VolumeMethod::CayleyMenger, err};
}

VolumeResult volume_ideal(double A, double B, double C) {
  if (std::abs(A + B + C - kPi) > 1e-10) {
    throw Error(ErrorCode::DomainError, "ideal tetrahedron angles must sum to pi");
  }
  C = kPi - A - B;
  if (!(A > 0.0) || !(B > 0.0) || !(C > 0.0)) {
    throw Error(ErrorCode::DegenerateIdeal, "ideal tetrahedron angles must be positive");
  }
  const double value = lobachevsky(A) + lobachevsky(B) + lobachevsky(C);
  return {value, VolumeMethod::Milnor, 4.0 * std::numeric_limits<double>::epsilon()};
}

DMIntegrandParams dm_params(const DihedralAngleSet& t) {
  const double A = t.A, B = t.B, C = t.C, D = t.D, E = t.E, F = t.F;
  DMIntegrandParams p{};
  p.S = A + B + C + D + E + F;
  p.k1 = -(std::cos(p.S) + std::cos(A + D) + std::cos(B + E) + std::cos(C + F) +
           std::cos(D + E + F) + std::cos(D + B + C) + std::cos(A + E + C) +
           std::cos(A + B + F));
  p.k2 = std::sin(p.S) + std::sin(A + D) + std::sin(B + E) + std::sin(C + F) +
         std::sin(D + E + F) + std::sin(D + B + C) + std::sin(A + E + C) + std::sin(A + B + F);
  p.k3 = 2.0 * (std::sin(A) * std::sin(D) + std::sin(B) * std::sin(E) + std::sin(C) * std::sin(F));
  const double k4sq = p.k1 * p.k1 + p.k2 * p.k2 - p.k3 * p.k3;
  if (k4sq < 0.0) throw Error(ErrorCode::DomainError, "k1^2 + k2^2 - k3^2 < 0");
  p.k4 = std::sqrt(k4sq);
  const double t34 = std::atan2(p.k3, p.k4);  // k3 > 0, k4 >= 0: same as arctan(k3/k4)
  const double t12 = p.k2 != 0.0 ? std::atan(p.k1 / p.k2) : std::copysign(kPi / 2.0, p.k1);
  p.z1 = t34 - t12;
  p.z2 = kPi - t34 - t12;
  return p;
}

VolumeResult volume_dm(const DihedralAngleSet& angles, const Tolerance& tol) {
  const TetraClass cls = classify(gram_from_angles(angles));
  if (!cls.hyperbolic()) {
    throw Error(ErrorCode::NotCompactHyperbolic, cls.reason.empty() ? "spherical" : cls.reason);
  }
  const DMIntegrandParams p = dm_params(angles);
  const double width = p.z2 - p.z1;
  if (!(width > 0.0 && width < kPi)) {
    throw Error(ErrorCode::DomainError, "z2 - z1 outside (0, pi)");
  }
  const double A = angles.A, B = angles.B, C = angles.C;
  const double D = angles.D, E = angles.E, F = angles.F;
  auto integrand = [&](double z) {
    const double num = std::cos((A + B + C + z) / 2) * std::cos((A + E + F + z) / 2) *
                       std::cos((B + D + F + z) / 2) * std::cos((C + D + E + z) / 2);
    const double den = std::sin((A + B + D + E + z) / 2) * std::sin((A + C + D + F + z) / 2) *
                       std::sin((B + C + E + F + z) / 2) * std::sin(z / 2);
    const double ratio = num / den;
    if (!(ratio > 0.0)) {
      throw Error(ErrorCode::IntegrandSignError,
                  "log argument " + std::to_string(ratio) + " at z = " + std::to_string(z));
    }
    return std::log(ratio);
  };
  const QuadratureResult q = integrate_adaptive(integrand, p.z1, p.z2, tol);
  const double value = -0.25 * q.value;
  if (!(value > 0.0)) {
    throw Error(ErrorCode::IntegrandSignError, "integral has the wrong sign");
  }
  return {value, VolumeMethod::LogRatioIntegral, 0.25 * q.error_estimate};
}

double degeneration_root(const DihedralAngleSet& angles, Space space) {
  if (space == Space::E3) throw Error(ErrorCode::DomainError, "no degeneration path in E3");
  const DetQuadratic q = detG_as_function_of_A(angles);
  const double A = angles.A;
  const bool upward = space == Space::H3;
  std::vector<double> candidates;
  for (double u : unit_roots(q)) {
    const double a = std::acos(u);
    if (upward ? a > A : a < A) candidates.push_back(a);
  }
  if (!upward && q(1.0) >= 0.0 && std::find(candidates.begin(), candidates.end(), 0.0) ==
                                      candidates.end()) {
    candidates.push_back(0.0);
  }
  std::sort(candidates.begin(), candidates.end());
  if (!upward) std::reverse(candidates.begin(), candidates.end());
  for (double a0 : candidates) {
    bool sign_kept = true;
    for (int k = 1; k <= kSignSamples && sign_kept; ++k) {
      const double a = A + (a0 - A) * k / (kSignSamples + 1.0);
      const double det = q(std::cos(a));
      sign_kept = upward ? det < 0.0 : det > 0.0;
    }
    if (sign_kept) return a0;
  }
  throw Error(ErrorCode::NoDegenerationRoot,
              "no root of det G(A) = 0 reachable with constant sign of det G");
}

VolumeResult volume_sforza_h3(const DihedralAngleSet& angles, const Tolerance& tol) {
  const GramMatrix G = gram_from_angles(angles);
  const TetraClass cls = classify(G);
  if (!cls.hyperbolic()) {
    throw Error(ErrorCode::NotCompactHyperbolic, cls.reason.empty() ? "spherical" : cls.reason);
  }
  const double a0 = degeneration_root(angles, Space::H3);
  const DetQuadratic q = detG_as_function_of_A(angles);
  const Mat4& base = G.entries();
  // V = int_{A0}^{A} (-l_A / 2) dA with A0 > A.
  const QuadratureResult r = integrate_adaptive(
      [&](double a) { return hyperbolic_half_length(base, q, a); }, angles.A, a0, tol);
  return {r.value, VolumeMethod::SforzaH3, r.error_estimate};
}

double degenerate_spherical_volume(const GramMatrix& G) {
  int k = 0;
  for (int i = 1; i < 4; ++i) {
    if (G.cofactor(i, i) > G.cofactor(k, k)) k = i;
  }
  if (!(G.cofactor(k, k) > 0.0)) return 0.0;
  std::array<double, 4> w{};
  double wmax = 0.0;
  for (int i = 0; i < 4; ++i) {
    w[i] = G.cofactor(k, i);
    wmax = std::max(wmax, std::abs(w[i]));
  }
  std::vector<int> pos, neg, zero;
  for (int i = 0; i < 4; ++i) {
    if (w[i] > 1e-9 * wmax) pos.push_back(i);
    else if (w[i] < -1e-9 * wmax) neg.push_back(i);
    else zero.push_back(i);
  }
  if (pos.empty() || neg.empty()) return 0.0;
  auto theta = [&](int i, int j) { return std::acos(std::clamp(-G(i, j), -1.0, 1.0)); };
  if (pos.size() == 1 || neg.size() == 1) {
    const int lone = pos.size() == 1 ? pos[0] : neg[0];
    std::vector<int> rest;
    for (int i = 0; i < 4; ++i) {
      if (i != lone) rest.push_back(i);
    }
    const double area = theta(rest[0], rest[1]) + theta(rest[0], rest[2]) +
                        theta(rest[1], rest[2]) - kPi;
    return 0.5 * kPi * std::max(area, 0.0);
  }
  double cross = 0.0;
  for (int i : pos) {
    for (int j : neg) cross += theta(i, j);
  }
  return 0.5 * kPi * std::max(cross - 2.0 * kPi, 0.0);
}

VolumeResult volume_sforza_s3(const DihedralAngleSet& angles, const Tolerance& tol) {
  const GramMatrix G = gram_from_angles(angles);
  const TetraClass cls = classify(G);
  if (!cls.spherical()) {
    throw Error(ErrorCode::NotSpherical, cls.reason.empty() ? "hyperbolic" : cls.reason);
  }
  const double a0 = degeneration_root(angles, Space::S3);
  const DetQuadratic q = detG_as_function_of_A(angles);
  const Mat4& base = G.entries();
  const QuadratureResult r = integrate_adaptive(
      [&](double a) { return spherical_half_length(base, q, a); }, a0, angles.A, tol);
  const double limit = degenerate_spherical_volume(GramMatrix::from_entries(entries_with_A(base, a0)));
  return {limit + r.value, VolumeMethod::SforzaS3, r.error_estimate};
}

VolumeResult volume_orthoscheme_spherical(double A, double B, double C, const Tolerance& tol) {
  const double S = schlafli_S(A, B, C, tol);
  return {0.25 * S, VolumeMethod::SchlafliSeries, 0.25 * tol.abs_tol};
}

VolumeResult volume_orthoscheme_hyperbolic(double A, double B, double C, const Tolerance& tol) {
  return volume_dm(orthoscheme_angles(A, B, C), tol);
}

VolumeResult volume_bolyai(double alpha, double beta, double gamma, double z,
                           const Tolerance& tol) {
  for (double angle : {alpha, beta, gamma}) {
    if (!(angle > 0.0 && angle < kPi / 2.0)) {
      throw Error(ErrorCode::InvalidAngle, "Bolyai planar angles must lie in (0, pi/2)");
    }
  }
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw Error(ErrorCode::DomainError, "Bolyai edge length must be finite and non-negative");
  }
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cg = std::cos(gamma), sg = std::sin(gamma);
  // cosh^2 u / cos^2 x - 1 = (sinh^2 u + sin^2 x) / cos^2 x, free of cancellation at u = 0.
  auto integrand = [&](double u) {
    const double sh = std::sinh(u);
    const double first = (sh * sh + sa * sa) / (ca * ca);
    const double second = (sh * sh + sg * sg) / (cg * cg);
    if (!(second > 1e-300)) {
      throw Error(ErrorCode::DomainError, "cosh^2 u / cos^2 gamma <= 1");
    }
    return u * sh / (first * std::sqrt(second));
  };
  const QuadratureResult r = integrate_adaptive(integrand, 0.0, z, tol);
  const double factor = std::tan(gamma) / (2.0 * std::tan(beta));
  return {factor * r.value, VolumeMethod::Bolyai, factor * r.error_estimate};
}

double schlafli_variation_residual(const DihedralAngleSet& angles, Dihedral which, double h,
                                   Space space, const Tolerance& tol) {
  if (space == Space::E3) {
    throw Error(ErrorCode::DomainError,
                "the variational identity is 0 = 0 in E3; no residual to compute");
  }
  if (!(h > 0.0)) throw Error(ErrorCode::DomainError, "step h must be positive");
  auto volume = [&](const DihedralAngleSet& t) {
    return space == Space::H3 ? volume_dm(t, tol).value : volume_sforza_s3(t, tol).value;
  };
  DihedralAngleSet plus = angles, minus = angles;
  plus.set(which, angles.get(which) + h);
  minus.set(which, angles.get(which) - h);
  const double fd = (volume(plus) - volume(minus)) / (2.0 * h);

  const GramMatrix G = gram_from_angles(angles);
  const TetraClass cls = classify(G);
  const bool ok = space == Space::H3 ? cls.hyperbolic() : cls.spherical();
  if (!ok) {
    throw Error(space == Space::H3 ? ErrorCode::NotCompactHyperbolic : ErrorCode::NotSpherical,
                "angle set not valid in the requested space");
  }
  const double length = edge_lengths(G, cls).at(which);
  const double expected = space == Space::H3 ? -0.5 * length : 0.5 * length;
  return std::abs(fd - expected);
}

}  // namespace curvavol
