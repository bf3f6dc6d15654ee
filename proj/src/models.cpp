#include "curvavol/models.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "curvavol/error.hpp"

namespace curvavol {

namespace {

constexpr std::size_t kChunk = 1 << 16;

Eigen::Vector4d to_eigen(const Vec4& x) { return {x[0], x[1], x[2], x[3]}; }

Vec4 from_eigen(const Eigen::Vector4d& x) { return {x(0), x(1), x(2), x(3)}; }

// Normalizes a timelike vector onto the upper sheet.
MinkowskiPoint onto_hyperboloid(const Vec4& x) {
  const double n = -minkowski_dot(x, x);
  if (!(n > 0.0)) throw Error(ErrorCode::NotRealizable, "vector is not timelike");
  const double s = (x[0] > 0.0 ? 1.0 : -1.0) / std::sqrt(n);
  return {{x[0] * s, x[1] * s, x[2] * s, x[3] * s}};
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform in [0, 1) from (seed, counter); 53 random bits.
double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t bits = splitmix64(splitmix64(seed) ^ counter);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

struct Moments {
  double n = 0.0, mean = 0.0, m2 = 0.0;

  void add(double x) {
    n += 1.0;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.n == 0.0) return;
    const double total = n + o.n;
    const double d = o.mean - mean;
    mean += d * o.n / total;
    m2 += o.m2 + d * d * n * o.n / total;
    n = total;
  }
};

Moments sample_chunk(const KleinTetrahedron& t, std::uint64_t seed, std::size_t begin,
                     std::size_t end) {
  Moments m;
  for (std::size_t k = begin; k < end; ++k) {
    std::array<double, 3> u{counter_uniform(seed, 3 * k), counter_uniform(seed, 3 * k + 1),
                            counter_uniform(seed, 3 * k + 2)};
    std::sort(u.begin(), u.end());
    const std::array<double, 4> w{u[0], u[1] - u[0], u[2] - u[1], 1.0 - u[2]};
    Vec3 x{0.0, 0.0, 0.0};
    for (int i = 0; i < 4; ++i)
      for (int c = 0; c < 3; ++c) x[c] += w[i] * t.v[i][c];
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const double s = 1.0 - r2;
    m.add(1.0 / (s * s));
  }
  return m;
}

}  // namespace

double minkowski_dot(const Vec4& x, const Vec4& y) {
  return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
}

MinkowskiPoint MinkowskiPoint::from_klein(const Vec3& k) {
  const double r2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
  if (!(r2 < 1.0)) throw Error(ErrorCode::NotRealizable, "Klein point outside the unit ball");
  const double x0 = 1.0 / std::sqrt(1.0 - r2);
  return {{x0, x0 * k[0], x0 * k[1], x0 * k[2]}};
}

Vec3 MinkowskiPoint::klein() const { return {x[1] / x[0], x[2] / x[0], x[3] / x[0]}; }

double MinkowskiPoint::normalization_residual() const {
  return std::abs(minkowski_dot(x, x) + 1.0);
}

double hyperbolic_distance(const MinkowskiPoint& p, const MinkowskiPoint& q) {
  return std::acosh(std::max(1.0, -minkowski_dot(p.x, q.x)));
}

double angle_at(const MinkowskiPoint& p, const MinkowskiPoint& q, const MinkowskiPoint& r) {
  // Tangent vectors at p toward q and r.
  const double pq = minkowski_dot(p.x, q.x);
  const double pr = minkowski_dot(p.x, r.x);
  Vec4 tq{}, tr{};
  for (int i = 0; i < 4; ++i) {
    tq[i] = q.x[i] + pq * p.x[i];
    tr[i] = r.x[i] + pr * p.x[i];
  }
  const double c = minkowski_dot(tq, tr) /
                   std::sqrt(minkowski_dot(tq, tq) * minkowski_dot(tr, tr));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

void KleinTetrahedron::validate() const {
  for (const auto& p : v) {
    if (!(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] < 1.0)) {
      throw Error(ErrorCode::NotRealizable, "vertex outside the Klein ball");
    }
  }
  if (!(euclidean_volume() > 1e-14)) {
    throw Error(ErrorCode::NotRealizable, "vertices are affinely dependent");
  }
}

double KleinTetrahedron::euclidean_volume() const {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int c = 0; c < 3; ++c) m(i, c) = v[i + 1][c] - v[0][c];
  return std::abs(m.determinant()) / 6.0;
}

KleinTetrahedron embed_from_edge_lengths(const EdgeLengthSet& lengths) {
  Eigen::Matrix4d M;
  for (int i = 0; i < 4; ++i) {
    M(i, i) = -1.0;
    for (int j = i + 1; j < 4; ++j) {
      if (!(lengths(i, j) > 0.0)) {
        throw Error(ErrorCode::NotRealizable, "edge lengths must be positive");
      }
      M(i, j) = M(j, i) = -std::cosh(lengths(i, j));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(M);
  const Eigen::Vector4d lambda = eig.eigenvalues();  // ascending
  const double tol = 1e-12 * lambda.cwiseAbs().maxCoeff();
  if (!(lambda(0) < -tol) || !(lambda(1) > tol)) {
    throw Error(ErrorCode::NotRealizable,
                "vertex Gram matrix is not of signature (1, 3); no hyperbolic embedding");
  }
  // Rows of X are the vertices: X J X^T = Q Lambda Q^T.
  Eigen::Matrix4d X = eig.eigenvectors() * lambda.cwiseAbs().cwiseSqrt().asDiagonal();
  if (X(0, 0) < 0.0) X.col(0) *= -1.0;
  KleinTetrahedron t;
  for (int i = 0; i < 4; ++i) {
    if (!(X(i, 0) > 0.0)) {
      throw Error(ErrorCode::NotRealizable, "vertices on both sheets of the hyperboloid");
    }
    t.v[i] = {X(i, 1) / X(i, 0), X(i, 2) / X(i, 0), X(i, 3) / X(i, 0)};
  }
  return t;
}

DihedralAngleSet dihedral_angles_from_vertices(const KleinTetrahedron& t) {
  std::array<Vec4, 4> p{};
  for (int i = 0; i < 4; ++i) p[i] = t.vertex(i).x;
  std::array<Vec4, 4> normal{};
  for (int i = 0; i < 4; ++i) {
    // w . x = det[x; p_j; p_k; p_l], so <J w, x> = det[...] vanishes on the face.
    Eigen::Matrix4d m;
    int row = 1;
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      for (int c = 0; c < 4; ++c) m(row, c) = p[j][c];
      ++row;
    }
    Vec4 w{};
    for (int c = 0; c < 4; ++c) {
      m.row(0).setZero();
      m(0, c) = 1.0;
      w[c] = m.determinant();
    }
    Vec4 n{-w[0], w[1], w[2], w[3]};
    const double norm2 = minkowski_dot(n, n);
    if (!(norm2 > 1e-24)) throw Error(ErrorCode::DegenerateFace, "face normal vanishes");
    double s = 1.0 / std::sqrt(norm2);
    if (minkowski_dot(n, p[i]) > 0.0) s = -s;  // outward: away from the opposite vertex
    for (double& c : n) c *= s;
    normal[i] = n;
  }
  Mat4 theta{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      theta[i][j] = std::acos(std::clamp(-minkowski_dot(normal[i], normal[j]), -1.0, 1.0));
    }
  }
  return DihedralAngleSet::from_face_angles(theta);
}

EdgeLengthSet edge_lengths_from_vertices(const KleinTetrahedron& t) {
  EdgeLengthSet out;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) out(i, j) = hyperbolic_distance(t.vertex(i), t.vertex(j));
  return out;
}

double bolyai_gamma(double alpha, double beta, double z) {
  const double a2 = std::asinh(std::tanh(z) / std::tan(alpha));
  const double a1 = std::asinh(std::tanh(a2) / std::tan(beta));
  const double d02 = std::acosh(std::cosh(a1) * std::cosh(a2));
  return std::atan2(std::tanh(z), std::sinh(d02));
}

KleinTetrahedron orthoscheme_from_bolyai_params(double alpha, double beta, double gamma,
                                                double z) {
  constexpr double kHalfPi = 1.5707963267948966;
  for (double angle : {alpha, beta, gamma}) {
    if (!(angle > 0.0 && angle < kHalfPi)) {
      throw Error(ErrorCode::InvalidAngle, "planar angles must lie in (0, pi/2)");
    }
  }
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw Error(ErrorCode::DomainError, "edge length z must be positive");
  }
  const double expected = bolyai_gamma(alpha, beta, z);
  if (std::abs(expected - gamma) > 1e-9) {
    throw Error(ErrorCode::NotRealizable,
                "gamma is fixed by (alpha, beta, z); expected " + std::to_string(expected));
  }
  const double a2 = std::asinh(std::tanh(z) / std::tan(alpha));
  const double a1 = std::asinh(std::tanh(a2) / std::tan(beta));
  const MinkowskiPoint P0{{std::cosh(a1), std::sinh(a1), 0.0, 0.0}};
  const MinkowskiPoint P1{{1.0, 0.0, 0.0, 0.0}};
  const MinkowskiPoint P2{{std::cosh(a2), 0.0, std::sinh(a2), 0.0}};
  const double cz = std::cosh(z), sz = std::sinh(z);
  const MinkowskiPoint P3{{cz * P2.x[0], 0.0, cz * P2.x[2], sz}};
  KleinTetrahedron t;
  t.v = {P0.klein(), P1.klein(), P2.klein(), P3.klein()};
  return t;
}

BolyaiParams bolyai_params(const KleinTetrahedron& t) {
  const MinkowskiPoint P0 = t.vertex(0), P1 = t.vertex(1), P2 = t.vertex(2), P3 = t.vertex(3);
  return {angle_at(P1, P2, P3), angle_at(P0, P1, P2), angle_at(P0, P2, P3),
          hyperbolic_distance(P2, P3)};
}

McEstimate mc_volume(const KleinTetrahedron& t, std::size_t samples, std::uint64_t seed,
                     unsigned threads) {
  if (samples < 1000) throw Error(ErrorCode::DomainError, "Monte Carlo needs at least 1000 samples");
  t.validate();
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<Moments> parts(chunks);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t c = first; c < chunks; c += stride) {
      parts[c] = sample_chunk(t, seed, c * kChunk, std::min(samples, (c + 1) * kChunk));
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
  if (n == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(work, k, n);
    for (auto& th : pool) th.join();
  }
  Moments total;
  for (const auto& m : parts) total.merge(m);  // fixed order: deterministic
  const double vol = t.euclidean_volume();
  const double var = total.n > 1.0 ? total.m2 / (total.n - 1.0) : 0.0;
  return {vol * total.mean, vol * std::sqrt(var / total.n), samples, seed};
}

Eigen::Matrix4d lorentz_boost(double rapidity, int axis) {
  if (axis < 1 || axis > 3) throw Error(ErrorCode::DomainError, "boost axis must be 1, 2 or 3");
  Eigen::Matrix4d L = Eigen::Matrix4d::Identity();
  L(0, 0) = L(axis, axis) = std::cosh(rapidity);
  L(0, axis) = L(axis, 0) = std::sinh(rapidity);
  return L;
}

Eigen::Matrix4d lorentz_rotation(const Eigen::Matrix3d& rotation) {
  Eigen::Matrix4d L = Eigen::Matrix4d::Identity();
  L.block<3, 3>(1, 1) = rotation;
  return L;
}

Eigen::Matrix4d boost_to_origin(const MinkowskiPoint& p) {
  const double x0 = p.x[0];
  const Eigen::Vector3d s(p.x[1], p.x[2], p.x[3]);
  Eigen::Matrix4d B;
  B(0, 0) = x0;
  B.block<1, 3>(0, 1) = -s.transpose();
  B.block<3, 1>(1, 0) = -s;
  B.block<3, 3>(1, 1) = Eigen::Matrix3d::Identity() + s * s.transpose() / (1.0 + x0);
  return B;
}

KleinTetrahedron transformed(const KleinTetrahedron& t, const Eigen::Matrix4d& lorentz) {
  KleinTetrahedron out;
  for (int i = 0; i < 4; ++i) {
    const Eigen::Vector4d y = lorentz * to_eigen(t.vertex(i).x);
    out.v[i] = onto_hyperboloid(from_eigen(y)).klein();
  }
  return out;
}

KleinTetrahedron centered(const KleinTetrahedron& t) {
  Vec4 sum{0.0, 0.0, 0.0, 0.0};
  for (int i = 0; i < 4; ++i)
    for (int c = 0; c < 4; ++c) sum[c] += t.vertex(i).x[c];
  return transformed(t, boost_to_origin(onto_hyperboloid(sum)));
}

}  // namespace curvavol
