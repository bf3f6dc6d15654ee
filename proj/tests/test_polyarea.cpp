#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "curvavol/error.hpp"
#include "curvavol/polyarea.hpp"
#include "plane.hpp"

using namespace curvavol;
using plane::kPi;

namespace {

constexpr AreaFormula kFour[] = {AreaFormula::SinHalf, AreaFormula::TanQuarter, AreaFormula::SinQuarter,
                                 AreaFormula::Bilinski};

long double shoelace(const std::vector<std::array<long double, 2>>& v) {
  long double s = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % v.size()];
    s += p[0] * q[1] - p[1] * q[0];
  }
  return std::abs(s) / 2;
}

long double edist(const std::array<long double, 2>& p, const std::array<long double, 2>& q) {
  return std::hypot(p[0] - q[0], p[1] - q[1]);
}

// Hyperbolic trapezoid: three vertices fixed, the fourth moved along a ray
// from the origin until the angle sums at the ends of the legs agree.
plane::Polygon trapezoid_by_bisection(long double r1, long double t1, long double r2, long double t2,
                                      long double r3, long double t3, long double t4) {
  auto make = [&](long double r) {
    plane::Polygon p;
    p.v = {plane::polar(r1, t1), plane::polar(r2, t2), plane::polar(r3, t3), plane::polar(r, t4)};
    return p;
  };
  auto g = [&](long double r) {
    const auto p = make(r);
    return p.angle_at(0) + p.angle_at(1) - p.angle_at(2) - p.angle_at(3);
  };
  long double lo = 0.05L, hi = 2.0L;
  // first sign change on a coarse grid
  long double prev = g(lo);
  for (int i = 1; i <= 200; ++i) {
    const long double r = 0.05L + (2.0L - 0.05L) * i / 200;
    const long double cur = g(r);
    if (prev * cur <= 0) {
      hi = r;
      lo = r - (2.0L - 0.05L) / 200;
      break;
    }
    prev = cur;
  }
  for (int it = 0; it < 200; ++it) {
    const long double mid = (lo + hi) / 2;
    if ((g(lo) < 0) == (g(mid) < 0)) lo = mid; else hi = mid;
  }
  return make((lo + hi) / 2);
}

}  // namespace

TEST(Heron, Trivial) {
  EXPECT_NEAR(heron_euclidean(3, 4, 5), 6.0L, 1e-15L);
  EXPECT_NEAR(heron_euclidean(1, 1, 2), 0.0L, 1e-15L);
  EXPECT_THROW(heron_euclidean(1, 1, 3), Error);
}

TEST(Heron, MatchesShoelace) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<long double> u(-3, 3);
  for (int k = 0; k < 200; ++k) {
    std::vector<std::array<long double, 2>> v{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
    const long double S = heron_euclidean(edist(v[0], v[1]), edist(v[1], v[2]), edist(v[2], v[0]));
    EXPECT_NEAR(S, shoelace(v), 1e-12L);
  }
}

TEST(Brahmagupta, Trivial) {
  EXPECT_NEAR(brahmagupta_euclidean({2, 2, 2, 2}), 4.0L, 1e-15L);
  EXPECT_NEAR(brahmagupta_euclidean({3, 4, 5, 0}), 6.0L, 1e-15L);
}

TEST(Brahmagupta, MatchesInscribedQuadrilateral) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<long double> u(0, 2 * kPi), ur(0.2L, 4);
  for (int k = 0; k < 200; ++k) {
    std::array<long double, 4> th{u(rng), u(rng), u(rng), u(rng)};
    std::sort(th.begin(), th.end());
    const long double R = ur(rng);
    std::vector<std::array<long double, 2>> v;
    for (long double t : th) v.push_back({R * std::cos(t), R * std::sin(t)});
    const QuadSides q{edist(v[0], v[1]), edist(v[1], v[2]), edist(v[2], v[3]), edist(v[3], v[0])};
    EXPECT_NEAR(brahmagupta_euclidean(q), shoelace(v), 1e-10L);
  }
}

TEST(Triangle, FormulasAgreeAndMatchGaussBonnet) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 1000; ++k) {
    const auto t = plane::random_triangle(rng, 0.01L, 5);
    const long double gb = triangle_area(t, AreaFormula::GaussBonnet).value;
    long double first = triangle_area(t, kFour[0]).value;
    for (auto f : kFour) {
      const long double S = triangle_area(t, f).value;
      ASSERT_NEAR(S, first, 1e-12L) << to_string(f);
      ASSERT_NEAR(S, gb, 1e-11L) << to_string(f);
      ASSERT_GT(S, 0);
      ASSERT_LT(S, kPi);
    }
  }
}

TEST(Triangle, MatchesCoordinates) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<long double> u(0, 2 * kPi), ur(0, 2);
  for (int k = 0; k < 100; ++k) {
    plane::Polygon p;
    for (int i = 0; i < 3; ++i) p.v.push_back(plane::polar(ur(rng), u(rng)));
    const TriSides t{p.side(0), p.side(1), p.side(2)};
    if (t.s() - std::max({t.a, t.b, t.c}) < 1e-3L) continue;
    EXPECT_NEAR(triangle_area(t, AreaFormula::SinQuarter).value, p.gauss_bonnet(), 1e-12L);
  }
}

TEST(Triangle, EuclideanLimit) {
  const TriSides base{1.0L, 1.3L, 0.8L};
  for (long double s : {1e-2L, 1e-3L, 1e-4L}) {
    const TriSides t{base.a * s, base.b * s, base.c * s};
    const long double ratio = triangle_area(t, AreaFormula::SinHalf).value / heron_euclidean(t.a, t.b, t.c);
    EXPECT_NEAR(ratio, 1.0L, s * s);
  }
}

TEST(Triangle, Degenerate) {
  long double prev = 10;
  for (long double a : {1e-1L, 1e-2L, 1e-3L}) {
    const long double S = triangle_area({a, 1, 1}, AreaFormula::SinHalf).value;
    EXPECT_LT(S, prev);
    prev = S;
  }
  EXPECT_LT(prev, 1e-3L);
  EXPECT_THROW(triangle_area({1, 1, 3}, AreaFormula::SinHalf), Error);
  EXPECT_THROW(triangle_area({0, 1, 1}, AreaFormula::SinHalf), Error);
}

TEST(CyclicQuad, DiagonalsMatchCoordinates) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const auto p = plane::random_cyclic(rng, 0.1L + 2.5L * k / 200);
    const auto q = plane::sides(p);
    const auto [e, f] = cyclic_quad_diagonals(q);
    EXPECT_NEAR(e, plane::dist(p.v[0], p.v[2]), 1e-11L);
    EXPECT_NEAR(f, plane::dist(p.v[1], p.v[3]), 1e-11L);
  }
}

TEST(CyclicQuad, PtolemyAndRatio) {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 1000; ++k) {
    const auto q = plane::sides(plane::random_cyclic(rng, 0.1L + 3.0L * (k % 100) / 100));
    const auto [e, f] = cyclic_quad_diagonals(q);
    const long double sa = half_sinh(q.a), sb = half_sinh(q.b), sc = half_sinh(q.c), sd = half_sinh(q.d);
    const long double se = half_sinh(e), sf = half_sinh(f);
    ASSERT_NEAR(se * sf, sa * sc + sb * sd, 1e-12L * std::max(1.0L, se * sf));
    ASSERT_NEAR(se / sf, (sa * sd + sb * sc) / (sa * sb + sc * sd), 1e-12L * std::max(1.0L, se / sf));
  }
}

TEST(CyclicQuad, SquareSymmetry) {
  const QuadSides q{1, 1, 1, 1};
  const auto [e, f] = cyclic_quad_diagonals(q);
  EXPECT_NEAR(e, f, 1e-15L);
  const auto ang = cyclic_quad_angles(q);
  EXPECT_NEAR(ang.A, ang.B, 1e-15L);
  EXPECT_NEAR(ang.A, ang.C, 1e-15L);
  EXPECT_NEAR(ang.A, ang.D, 1e-15L);
  const long double gb = cyclic_quad_area(q, AreaFormula::GaussBonnet).value;
  for (auto f2 : kFour) EXPECT_NEAR(cyclic_quad_area(q, f2).value, gb, 1e-12L);
}

TEST(CyclicQuad, AnglesMatchCoordinates) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const auto p = plane::random_cyclic(rng, 0.1L + 2.5L * k / 200);
    const auto ang = cyclic_quad_angles(plane::sides(p));
    EXPECT_NEAR(ang.A, p.angle_at(0), 1e-10L);
    EXPECT_NEAR(ang.B, p.angle_at(1), 1e-10L);
    EXPECT_NEAR(ang.C, p.angle_at(2), 1e-10L);
    EXPECT_NEAR(ang.D, p.angle_at(3), 1e-10L);
    EXPECT_NEAR(ang.A + ang.C, ang.B + ang.D, 1e-11L);
    EXPECT_LT(ang.A + ang.B + ang.C + ang.D, 2 * kPi);
  }
}

TEST(CyclicQuad, FourFormulasAndGaussBonnet) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 1000; ++k) {
    const auto p = plane::random_cyclic(rng, 0.1L + 3.0L * (k % 100) / 100);
    const auto q = plane::sides(p);
    const long double gb = cyclic_quad_area(q, AreaFormula::GaussBonnet).value;
    ASSERT_NEAR(gb, p.gauss_bonnet(), 1e-10L);
    std::array<long double, 4> S{};
    for (int i = 0; i < 4; ++i) S[i] = cyclic_quad_area(q, kFour[i]).value;
    for (int i = 0; i < 4; ++i) {
      ASSERT_NEAR(S[i], gb, 1e-10L) << to_string(kFour[i]);
      for (int j = 0; j < i; ++j) ASSERT_NEAR(S[i], S[j], 1e-11L);
      ASSERT_GT(S[i], 0);
      ASSERT_LT(S[i], 2 * kPi);
    }
    // the three half/quarter identities tie the outputs together
    const long double s4 = std::pow(std::sin(S[2] / 4), 2);
    ASSERT_NEAR(std::pow(std::sin(S[0] / 2), 2), 4 * s4 * (1 - s4), 1e-11L);
    ASSERT_NEAR(std::cos(S[3] / 2), 1 - 2 * s4, 1e-11L);
    ASSERT_NEAR(std::pow(std::tan(S[1] / 4), 2), s4 / (1 - s4), 1e-11L);
  }
}

TEST(CyclicQuad, StrictInequalities) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 1000; ++k) {
    const auto q = plane::sides(plane::random_cyclic(rng, 0.1L + 3.0L * (k % 100) / 100));
    const long double S = cyclic_quad_area(q, AreaFormula::GaussBonnet).value;
    const long double s = q.s();
    const long double chp = std::cosh(q.a / 2) * std::cosh(q.b / 2) * std::cosh(q.c / 2) * std::cosh(q.d / 2);
    const long double upper =
        std::sinh(s - q.a) * std::sinh(s - q.b) * std::sinh(s - q.c) * std::sinh(s - q.d) / (4 * chp * chp);
    const long double lower = std::tanh((s - q.a) / 2) * std::tanh((s - q.b) / 2) * std::tanh((s - q.c) / 2) *
                              std::tanh((s - q.d) / 2);
    ASSERT_LT(std::pow(std::sin(S / 2), 2), upper);
    ASSERT_GT(std::pow(std::tan(S / 4), 2), lower);
    const long double eps = epsilon_term(q);
    ASSERT_GT(eps, 0);
    ASSERT_LT(eps, 1);
  }
}

TEST(CyclicQuad, CyclicSymmetry) {
  std::mt19937_64 rng(10);
  for (int k = 0; k < 100; ++k) {
    const auto q = plane::sides(plane::random_cyclic(rng, 1.2L));
    for (auto f : kFour) {
      const long double S = cyclic_quad_area(q, f).value;
      EXPECT_NEAR(cyclic_quad_area(q.rotated(), f).value, S, 1e-12L);
      EXPECT_NEAR(cyclic_quad_area(q.reversed(), f).value, S, 1e-12L);
    }
  }
}

TEST(CyclicQuad, ZeroSideIsTriangle) {
  const QuadSides q{1.1L, 0.7L, 1.4L, 0};
  EXPECT_DOUBLE_EQ(epsilon_term(q), 0.0);
  for (auto f : kFour)
    EXPECT_NEAR(cyclic_quad_area(q, f).value, triangle_area({1.1L, 0.7L, 1.4L}, AreaFormula::SinHalf).value, 1e-14L);
  // the general formulas approach it continuously
  const QuadSides near{1.1L, 0.7L, 1.4L, 1e-7L};
  EXPECT_NEAR(cyclic_quad_area(near, AreaFormula::SinQuarter).value,
              triangle_area({1.1L, 0.7L, 1.4L}, AreaFormula::SinHalf).value, 1e-6L);
  const auto ang = cyclic_quad_angles(near);
  EXPECT_NEAR(ang.A + ang.C - ang.B - ang.D, 0.0L, 1e-6L);
  const auto tri = triangle_angles({1.1L, 0.7L, 1.4L});
  EXPECT_NEAR(ang.B, tri[2], 1e-6L);  // angle between a and b, opposite c
  EXPECT_NEAR(ang.C, tri[0], 1e-6L);  // between b and c, opposite a
  // the collapsing side leaves a straight angle on top of the triangle's
  EXPECT_NEAR(ang.A + ang.D - kPi, tri[1], 1e-6L);
}

TEST(CyclicQuad, DiagonalsAtZeroSide) {
  const auto [e, f] = cyclic_quad_diagonals({1.1L, 0.7L, 1.4L, 0});
  EXPECT_NEAR(e, 1.4L, 1e-15L);
  EXPECT_NEAR(f, 1.1L, 1e-15L);
}

TEST(CyclicQuad, EpsilonLemma) {
  for (const QuadSides q : {QuadSides{1, 1, 1, 1}, QuadSides{0.3L, 1.7L, 2.2L, 0.9L}, QuadSides{4, 3, 2, 1}}) {
    EXPECT_NEAR(1 - epsilon_term(q), lemma_H(q), 1e-13L);
  }
  long double prev = 1;
  for (long double t : {1.0L, 0.1L, 0.01L}) {
    const long double e = epsilon_term({t, t, t, t});
    EXPECT_LT(e, prev);
    prev = e;
  }
  EXPECT_LT(prev, 1e-8L);
}

TEST(CyclicQuad, EuclideanLimit) {
  const QuadSides base{1.0L, 1.4L, 0.9L, 1.2L};
  for (long double s : {1e-2L, 1e-3L}) {
    const QuadSides q{base.a * s, base.b * s, base.c * s, base.d * s};
    EXPECT_NEAR(cyclic_quad_area(q, AreaFormula::SinQuarter).value / brahmagupta_euclidean(q), 1.0L, s * s);
  }
}

TEST(CyclicQuad, MonotoneInScale) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<long double> lam(1.0L, 1.5L);
  for (int k = 0; k < 100; ++k) {
    const auto q = plane::sides(plane::random_cyclic(rng, 0.8L));
    const long double l = lam(rng);
    const QuadSides big{q.a * l, q.b * l, q.c * l, q.d * l};
    EXPECT_GT(cyclic_quad_area(big, AreaFormula::SinQuarter).value, cyclic_quad_area(q, AreaFormula::SinQuarter).value);
  }
}

TEST(CyclicQuad, InvalidSides) {
  EXPECT_THROW(cyclic_quad_area({1, 1, 1, 4}, AreaFormula::SinHalf), Error);
  EXPECT_THROW(cyclic_quad_area({1, 0, 0, 1}, AreaFormula::SinHalf), Error);
  EXPECT_THROW(cyclic_quad_area({-1, 1, 1, 1}, AreaFormula::SinHalf), Error);
}

TEST(Bicentric, MatchesSinQuarter) {
  const QuadSides q{1.0L, 1.2L, 1.4L, 1.2L};
  EXPECT_NEAR(bicentric_area(q).value, cyclic_quad_area(q, AreaFormula::SinQuarter).value, 1e-12L);
  const long double a = 0.8L;
  const long double v = std::pow(std::tanh(a / 2), 4);
  EXPECT_NEAR(std::pow(std::sin(bicentric_area({a, a, a, a}).value / 4), 2), v, 1e-15L);
  EXPECT_THROW(bicentric_area({1, 1.1L, 1, 1}), Error);
}

TEST(Bicentric, EuclideanLimit) {
  const QuadSides base{1.0L, 1.2L, 1.4L, 1.2L};
  for (long double s : {1e-2L, 1e-3L}) {
    const QuadSides q{base.a * s, base.b * s, base.c * s, base.d * s};
    const long double S = bicentric_area(q).value;
    EXPECT_NEAR(S * S / (q.a * q.b * q.c * q.d), 1.0L, s * s);
  }
}

TEST(Trapezoid, EuclideanRightTrapezoid) {
  // bases 3 and 1, legs 2 (perpendicular) and 2 sqrt 2, height 2
  EXPECT_NEAR(trapezoid_area_euclidean(2 * std::sqrt(2.0L), 3, 2, 1), 4.0L, 1e-15L);
  EXPECT_NEAR(trapezoid_area_euclidean(2, 3, 2 * std::sqrt(2.0L), 1), 4.0L, 1e-15L);
}

TEST(Trapezoid, EuclideanMatchesCoordinates) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<long double> u(0.2L, 3);
  for (int k = 0; k < 200; ++k) {
    const long double d = u(rng), h = u(rng), x2 = u(rng), b = u(rng);
    // V1 V2 V3 V4 with a = V1V2, b = V2V3 (top), c = V3V4, d = V4V1 (bottom)
    std::vector<std::array<long double, 2>> v{{d, 0}, {x2, h}, {x2 - b, h}, {0, 0}};
    if (std::abs(b - d) < 1e-3L) continue;
    const long double S = trapezoid_area_euclidean(edist(v[0], v[1]), b, edist(v[2], v[3]), d);
    EXPECT_NEAR(S, shoelace(v), 1e-10L);
  }
  EXPECT_NEAR(trapezoid_area_euclidean(1, 3, 1, 1), 0.0L, 1e-15L);  // a - b + c + d = 0
}

TEST(Trapezoid, MatchesHyperboloidConstruction) {
  struct Seed {
    long double r1, t1, r2, t2, r3, t3, t4;
  };
  for (const Seed& s : {Seed{0.3L, 3.5L, 0.6L, 5.0L, 0.7L, 0.6L, 2.2L}, Seed{0.5L, 3.3L, 0.9L, 5.2L, 0.6L, 0.8L, 2.0L},
                        Seed{0.2L, 3.8L, 0.8L, 5.4L, 1.0L, 0.5L, 2.4L}}) {
    const auto p = trapezoid_by_bisection(s.r1, s.t1, s.r2, s.t2, s.r3, s.t3, s.t4);
    ASSERT_NEAR(p.angle_at(0) + p.angle_at(1), p.angle_at(2) + p.angle_at(3), 1e-12L);
    EXPECT_NEAR(trapezoid_area(plane::sides(p)).value, p.gauss_bonnet(), 1e-10L);
  }
}

TEST(Trapezoid, EuclideanLimit) {
  const QuadSides base{2 * std::sqrt(2.0L), 3, 2, 1};
  for (long double s : {1e-2L, 1e-3L}) {
    const QuadSides q{base.a * s, base.b * s, base.c * s, base.d * s};
    const long double S = trapezoid_area(q).value;
    const long double SE = trapezoid_area_euclidean(q.a, q.b, q.c, q.d);
    EXPECT_NEAR(S / SE, 1.0L, 10 * s * s);
    EXPECT_NEAR(std::pow(std::tan(S / 4), 2) / std::pow(SE / 4, 2), 1.0L, 10 * s * s);
  }
}

TEST(Trapezoid, Errors) {
  EXPECT_THROW(trapezoid_area({1, 1.5L, 1, 1.5L}), Error);
  EXPECT_THROW(trapezoid_area({1, 1.5L, 1, 1.5L + 1e-13L}), Error);
  EXPECT_NO_THROW(trapezoid_area({0.8L, 1.5L, 0.9L, 1.0L}));
  EXPECT_THROW(trapezoid_area_euclidean(1, 2, 1, 2), Error);
}
