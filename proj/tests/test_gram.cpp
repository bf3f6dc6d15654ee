#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "curvavol/error.hpp"
#include "curvavol/gram.hpp"

using namespace curvavol;

namespace {

constexpr double kPi = std::numbers::pi;

// Leibniz expansion, independent of the cofactor code.
double leibniz_det(const Mat4& m) {
  std::array<int, 4> p{0, 1, 2, 3};
  double total = 0.0;
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (p[i] > p[j]) ++inversions;
    double term = inversions % 2 ? -1.0 : 1.0;
    for (int i = 0; i < 4; ++i) term *= m[i][p[i]];
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

DihedralAngleSet random_angles(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.2, kPi - 0.2);
  return {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
}

DihedralAngleSet regular(double a) { return {a, a, a, a, a, a}; }

}  // namespace

TEST(GramFromAngles, AllRight) {
  const GramMatrix G = gram_from_angles(regular(kPi / 2));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(G(i, j), i == j ? 1.0 : 0.0, 1e-16);
  EXPECT_NEAR(G.det(), 1.0, 1e-15);
}

TEST(GramFromAngles, Layout) {
  // Row 1: -cos A, -cos B, -cos F; row 2: -cos C, -cos E; row 3: -cos D.
  const GramMatrix G = gram_from_angles({1.1, 1.2, 1.3, 1.4, 1.5, 1.6});
  EXPECT_DOUBLE_EQ(G(0, 1), -std::cos(1.1));
  EXPECT_DOUBLE_EQ(G(0, 2), -std::cos(1.2));
  EXPECT_DOUBLE_EQ(G(0, 3), -std::cos(1.6));
  EXPECT_DOUBLE_EQ(G(1, 2), -std::cos(1.3));
  EXPECT_DOUBLE_EQ(G(1, 3), -std::cos(1.5));
  EXPECT_DOUBLE_EQ(G(2, 3), -std::cos(1.4));
  EXPECT_DOUBLE_EQ(G(3, 2), G(2, 3));
}

TEST(GramFromAngles, RegularIdeal) {
  // Vertices at infinity: det stays negative, the diagonal cofactors vanish.
  const GramMatrix G = gram_from_angles(regular(kPi / 3));
  EXPECT_NEAR(G.det(), -27.0 / 16.0, 1e-14);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(G.cofactor(i, i), 0.0, 1e-15);
}

TEST(GramFromAngles, IdealClosedForm) {
  const double A = 0.7, B = 1.1, C = kPi - A - B;
  const GramMatrix G = gram_from_angles({A, B, C, A, B, C});
  EXPECT_NEAR(G.det(), -4 * std::pow(std::sin(A) * std::sin(B) * std::sin(A + B), 2), 1e-14);
}

TEST(GramFromAngles, RejectsBadAngle) {
  try {
    gram_from_angles({1.0, 1.0, 1.0, 1.0, 1.0, kPi});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidAngle);
  }
  EXPECT_THROW(gram_from_angles({0.0, 1, 1, 1, 1, 1}), Error);
}

TEST(GramFromAngles, DeterminantMatchesExpansion) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const GramMatrix G = gram_from_angles(random_angles(rng));
    EXPECT_NEAR(G.det(), leibniz_det(G.entries()), 1e-13);
  }
}

TEST(Cofactors, Identity) {
  Mat4 eye{};
  for (int i = 0; i < 4; ++i) eye[i][i] = 1.0;
  const Mat4 c = cofactors(GramMatrix::from_entries(eye));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(c[i][j], i == j ? 1.0 : 0.0);
}

TEST(Cofactors, AllRightOffDiagonalVanishes) {
  const GramMatrix G = gram_from_angles(regular(kPi / 2));
  EXPECT_NEAR(G.cofactor(2, 3), 0.0, 1e-15);
}

TEST(Cofactors, Symmetric) {
  std::mt19937_64 rng(2);
  for (int n = 0; n < 100; ++n) {
    const GramMatrix G = gram_from_angles(random_angles(rng));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) EXPECT_NEAR(G.cofactor(i, j), G.cofactor(j, i), 1e-14);
  }
}

TEST(Cofactors, JacobiIdentity) {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 1000; ++n) {
    const auto t = random_angles(rng);
    const GramMatrix G = gram_from_angles(t);
    const double lhs = G.cofactor(2, 2) * G.cofactor(3, 3) - G.cofactor(2, 3) * G.cofactor(2, 3);
    EXPECT_NEAR(lhs, G.det() * std::sin(t.A) * std::sin(t.A), 1e-12);
  }
}

TEST(Classify, AllRightIsSpherical) {
  EXPECT_TRUE(classify(gram_from_angles(regular(kPi / 2))).spherical());
}

TEST(Classify, RegularHyperbolic) {
  const TetraClass c = classify(gram_from_angles(regular(1.2)));
  EXPECT_TRUE(c.hyperbolic());
  const GramMatrix G = gram_from_angles(regular(1.2));
  EXPECT_LT(G.det(), 0.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_GT(G.cofactor(i, j), 0.0);
}

TEST(Classify, RegularIdealIsInvalid) {
  const TetraClass c = classify(gram_from_angles(regular(kPi / 3)));
  EXPECT_EQ(c.kind, TetraClass::Kind::Invalid);
  EXPECT_NE(c.reason.find("cofactor"), std::string::npos);
}

TEST(Classify, StableUnderTinyPerturbation) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> jitter(-1e-9, 1e-9);
  int hyperbolic = 0;
  for (int n = 0; n < 5000 && hyperbolic < 100; ++n) {
    const auto t = random_angles(rng);
    const GramMatrix G = gram_from_angles(t);
    if (!classify(G).hyperbolic() || G.det() > -1e-6) continue;
    ++hyperbolic;
    DihedralAngleSet p = t;
    for (int k = 0; k < 6; ++k) {
      const auto d = static_cast<Dihedral>(k);
      p.set(d, p.get(d) + jitter(rng));
    }
    EXPECT_TRUE(classify(gram_from_angles(p)).hyperbolic());
  }
  EXPECT_GT(hyperbolic, 10);
}

TEST(EdgeLengths, SphericalAllRight) {
  const GramMatrix G = gram_from_angles(regular(kPi / 2));
  const auto len = edge_lengths(G, classify(G));
  for (double l : len.lengths) EXPECT_NEAR(l, kPi / 2, 1e-15);
}

TEST(EdgeLengths, RegularHyperbolicAllEqual) {
  const GramMatrix G = gram_from_angles(regular(1.2));
  const auto len = edge_lengths(G, classify(G));
  for (double l : len.lengths) {
    EXPECT_GT(l, 0.0);
    EXPECT_NEAR(l, len.lengths[0], 1e-13);
  }
}

TEST(EdgeLengths, GrowTowardIdeal) {
  double previous = 0.0;
  for (double eps : {0.1, 0.01, 0.001}) {
    const GramMatrix G = gram_from_angles(regular(kPi / 3 + eps));
    const auto len = edge_lengths(G, classify(G));
    EXPECT_GT(len.lengths[0], previous);
    previous = len.lengths[0];
  }
  EXPECT_GT(previous, 5.0);
}

TEST(EdgeLengths, RejectsInvalidClass) {
  const GramMatrix G = gram_from_angles(regular(kPi / 3));
  EXPECT_THROW(edge_lengths(G, classify(G)), Error);
}

TEST(EdgeLengths, EdgeOfDihedral) {
  // The edge carrying A is the one shared by faces 0 and 1, i.e. vertices 2, 3.
  EXPECT_EQ(edge_of(Dihedral::A).i, 2);
  EXPECT_EQ(edge_of(Dihedral::A).j, 3);
  EXPECT_EQ(edge_of(Dihedral::D).i, 0);
  EXPECT_EQ(edge_of(Dihedral::D).j, 1);
  const DihedralAngleSet t{1.1, 1.2, 1.3, 1.4, 1.5, 1.6};
  for (int k = 0; k < 6; ++k) {
    const auto d = static_cast<Dihedral>(k);
    EXPECT_EQ(t.at_edge(edge_of(d).i, edge_of(d).j), t.get(d));
  }
}

TEST(EdgeLengths, RelabelingInvariance) {
  std::mt19937_64 rng(6);
  int found = 0;
  while (found < 20) {
    const auto t = random_angles(rng);
    const GramMatrix G = gram_from_angles(t);
    const TetraClass cls = classify(G);
    if (cls.kind == TetraClass::Kind::Invalid) continue;
    ++found;
    const auto len = edge_lengths(G, cls);
    std::array<int, 4> perm{0, 1, 2, 3};
    do {
      const GramMatrix H = gram_from_angles(t.relabeled(perm));
      const auto relen = edge_lengths(H, classify(H));
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          EXPECT_NEAR(relen(perm[i], perm[j]), len(i, j), 1e-10);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(DetQuadratic, FreePairFormula) {
  // All angles pi/2 except A and D: det = sin^2 A sin^2 D.
  const double D = 0.8;
  const DihedralAngleSet t{0.9, kPi / 2, kPi / 2, D, kPi / 2, kPi / 2};
  const DetQuadratic q = detG_as_function_of_A(t);
  const double s2 = std::sin(D) * std::sin(D);
  EXPECT_NEAR(q.alpha, -s2, 1e-15);
  EXPECT_NEAR(q.beta, 0.0, 1e-15);
  EXPECT_NEAR(q.gamma, s2, 1e-15);
  EXPECT_NEAR(q(std::cos(0.9)), std::pow(std::sin(0.9) * std::sin(D), 2), 1e-15);
}

TEST(DetQuadratic, MatchesDirectDeterminant) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.05, kPi - 0.05);
  const auto t = random_angles(rng);
  const DetQuadratic q = detG_as_function_of_A(t);
  for (int n = 0; n < 20; ++n) {
    DihedralAngleSet s = t;
    s.A = u(rng);
    EXPECT_NEAR(q(std::cos(s.A)), gram_from_angles(s).det(), 1e-12);
  }
  DihedralAngleSet half = t;
  half.A = kPi / 2;
  EXPECT_NEAR(q.gamma, gram_from_angles(half).det(), 1e-15);
}
