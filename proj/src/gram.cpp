#include "curvavol/gram.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "curvavol/error.hpp"

namespace curvavol {

namespace {

constexpr double kPi = std::numbers::pi;

// Face pair (p, q) holding each dihedral angle in the Gram matrix.
constexpr std::array<VertexPair, 6> kFacePairs = {{
    {0, 1},  // A
    {0, 2},  // B
    {1, 2},  // C
    {2, 3},  // D
    {1, 3},  // E
    {0, 3},  // F
}};

Dihedral dihedral_of_faces(int i, int j) {
  if (i > j) std::swap(i, j);
  for (int k = 0; k < 6; ++k) {
    if (kFacePairs[k].i == i && kFacePairs[k].j == j) return static_cast<Dihedral>(k);
  }
  throw Error(ErrorCode::InvalidInput, "face indices must be distinct and in 0..3");
}

double det4(const Mat4& m) {
  double d = 0.0;
  for (int j = 0; j < 4; ++j) d += m[0][j] * cofactor(m, 0, j);
  return d;
}

}  // namespace

VertexPair edge_of(Dihedral which) {
  const VertexPair faces = kFacePairs[static_cast<int>(which)];
  VertexPair edge{-1, -1};
  for (int v = 0; v < 4; ++v) {
    if (v == faces.i || v == faces.j) continue;
    (edge.i < 0 ? edge.i : edge.j) = v;
  }
  return edge;
}

double DihedralAngleSet::get(Dihedral which) const {
  switch (which) {
    case Dihedral::A: return A;
    case Dihedral::B: return B;
    case Dihedral::C: return C;
    case Dihedral::D: return D;
    case Dihedral::E: return E;
    case Dihedral::F: return F;
  }
  return A;
}

void DihedralAngleSet::set(Dihedral which, double value) {
  switch (which) {
    case Dihedral::A: A = value; break;
    case Dihedral::B: B = value; break;
    case Dihedral::C: C = value; break;
    case Dihedral::D: D = value; break;
    case Dihedral::E: E = value; break;
    case Dihedral::F: F = value; break;
  }
}

double DihedralAngleSet::between_faces(int i, int j) const {
  return get(dihedral_of_faces(i, j));
}

double DihedralAngleSet::at_edge(int i, int j) const {
  int faces[2];
  int n = 0;
  for (int v = 0; v < 4; ++v) {
    if (v != i && v != j) faces[n++] = v;
  }
  if (n != 2) throw Error(ErrorCode::InvalidInput, "edge vertices must be distinct");
  return between_faces(faces[0], faces[1]);
}

DihedralAngleSet DihedralAngleSet::from_face_angles(const Mat4& theta) {
  DihedralAngleSet out{};
  for (int k = 0; k < 6; ++k) {
    out.set(static_cast<Dihedral>(k), theta[kFacePairs[k].i][kFacePairs[k].j]);
  }
  return out;
}

DihedralAngleSet DihedralAngleSet::relabeled(const std::array<int, 4>& perm) const {
  Mat4 theta{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j) theta[perm[i]][perm[j]] = between_faces(i, j);
    }
  }
  return from_face_angles(theta);
}

void DihedralAngleSet::validate() const {
  for (double a : {A, B, C, D, E, F}) {
    if (!(a > 0.0 && a < kPi)) {
      throw Error(ErrorCode::InvalidAngle, "dihedral angle " + std::to_string(a) +
                                               " outside (0, pi)");
    }
  }
}

DihedralAngleSet orthoscheme_angles(double A, double B, double C) {
  const double right = kPi / 2.0;
  // Face pairs (0,1) -> A, (1,2) -> C slot, (2,3) -> D slot.
  return DihedralAngleSet{A, right, B, C, right, right};
}

double det3(const std::array<std::array<double, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double cofactor(const Mat4& m, int i, int j) {
  std::array<std::array<double, 3>, 3> minor{};
  int r = 0;
  for (int row = 0; row < 4; ++row) {
    if (row == i) continue;
    int c = 0;
    for (int col = 0; col < 4; ++col) {
      if (col == j) continue;
      minor[r][c++] = m[row][col];
    }
    ++r;
  }
  const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
  return sign * det3(minor);
}

GramMatrix GramMatrix::from_entries(const Mat4& entries) {
  GramMatrix G;
  G.entries_ = entries;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) G.cofactors_[i][j] = curvavol::cofactor(entries, i, j);
  }
  G.det_ = det4(entries);
  return G;
}

GramMatrix gram_from_angles(const DihedralAngleSet& angles) {
  angles.validate();
  Mat4 m{};
  for (int i = 0; i < 4; ++i) {
    m[i][i] = 1.0;
    for (int j = 0; j < 4; ++j) {
      if (i != j) m[i][j] = -std::cos(angles.between_faces(i, j));
    }
  }
  return GramMatrix::from_entries(m);
}

Mat4 cofactors(const GramMatrix& G) { return G.cofactors(); }

TetraClass classify(const GramMatrix& G) {
  constexpr double kZero = 1e-12;
  const double det = G.det();
  TetraClass out;
  if (std::abs(det) <= kZero) {
    out.reason = "det G vanishes (Euclidean or ideal boundary)";
    return out;
  }
  for (int i = 0; i < 4; ++i) {
    if (!(G.cofactor(i, i) > kZero)) {
      out.reason = "cofactor c" + std::to_string(i + 1) + std::to_string(i + 1) + " is not positive";
      return out;
    }
  }
  if (det > 0.0) {
    out.kind = TetraClass::Kind::Spherical;
    return out;
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (!(G.cofactor(i, j) > kZero)) {
        out.reason = "cofactor c" + std::to_string(i + 1) + std::to_string(j + 1) +
                     " is not positive although det G < 0";
        return out;
      }
    }
  }
  out.kind = TetraClass::Kind::CompactHyperbolic;
  return out;
}

int EdgeLengthSet::slot(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j > 3 || i == j) throw Error(ErrorCode::InvalidInput, "bad vertex pair");
  static constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  return table[i][j];
}

double EdgeLengthSet::operator()(int i, int j) const { return lengths[slot(i, j)]; }
double& EdgeLengthSet::operator()(int i, int j) { return lengths[slot(i, j)]; }

double EdgeLengthSet::at(Dihedral which) const {
  const VertexPair e = edge_of(which);
  return (*this)(e.i, e.j);
}

EdgeLengthSet edge_lengths(const GramMatrix& G, const TetraClass& cls) {
  constexpr double kSlack = 1e-9;
  if (cls.kind == TetraClass::Kind::Invalid) {
    throw Error(ErrorCode::DomainError, "edge lengths need a hyperbolic or spherical Gram matrix");
  }
  EdgeLengthSet out;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double denom = std::sqrt(G.cofactor(i, i) * G.cofactor(j, j));
      double arg = G.cofactor(i, j) / denom;
      if (cls.hyperbolic()) {
        if (arg < 1.0 - kSlack) {
          throw Error(ErrorCode::DomainError, "cosh of edge length below 1: inconsistent Gram matrix");
        }
        out(i, j) = std::acosh(std::max(arg, 1.0));
      } else {
        if (std::abs(arg) > 1.0 + kSlack) {
          throw Error(ErrorCode::DomainError, "cos of edge length outside [-1, 1]");
        }
        arg = std::clamp(arg, -1.0, 1.0);
        out(i, j) = std::acos(arg);
      }
    }
  }
  return out;
}

DetQuadratic det_quadratic(const DihedralAngleSet& angles, Dihedral which) {
  const GramMatrix base = gram_from_angles(angles);
  const VertexPair faces = kFacePairs[static_cast<int>(which)];
  auto det_at = [&](double u) {
    Mat4 m = base.entries();
    m[faces.i][faces.j] = m[faces.j][faces.i] = -u;
    return det4(m);
  };
  const double fm = det_at(-1.0);
  const double f0 = det_at(0.0);
  const double fp = det_at(1.0);
  return {0.5 * (fp + fm) - f0, 0.5 * (fp - fm), f0};
}

DetQuadratic detG_as_function_of_A(const DihedralAngleSet& angles) {
  return det_quadratic(angles, Dihedral::A);
}

}  // namespace curvavol
