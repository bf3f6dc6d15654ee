#include "curvavol/polyarea.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "curvavol/error.hpp"

namespace curvavol {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;
constexpr long double kRadicandTol = 1e-12L;

/// Checks a squared sine/cosine/tangent against its range and clamps it.
long double checked(long double v, long double hi, const char* what) {
  if (!(v >= -kRadicandTol) || v > hi + kRadicandTol) {
    throw Error(ErrorCode::DomainError, std::string(what) + " out of range: " + std::to_string(static_cast<double>(v)));
  }
  return std::clamp(v, 0.0L, hi);
}

long double ch2(long double x) { return std::cosh(x / 2); }
long double th2(long double x) { return std::tanh(x / 2); }

/// cos of the angle between sides p and t, the other two being q and r in
/// cyclic order p, q, r, t.
long double cos_quad_angle(long double p, long double q, long double r, long double t) {
  const long double sp = half_sinh(p), sq = half_sinh(q), sr = half_sinh(r), st = half_sinh(t);
  const long double num = sp * sp - sq * sq - sr * sr + st * st + 2 * sp * sq * sr * st + 2 * sp * sp * st * st;
  return num / (2 * (sp * st + sq * sr) * ch2(p) * ch2(t));
}

long double safe_acos(long double x) { return std::acos(std::clamp(x, -1.0L, 1.0L)); }

TriSides drop_zero_side(const QuadSides& q, int zero) {
  switch (zero) {
    case 0: return {q.b, q.c, q.d};
    case 1: return {q.a, q.c, q.d};
    case 2: return {q.a, q.b, q.d};
    default: return {q.a, q.b, q.c};
  }
}

}  // namespace

std::string_view to_string(AreaFormula f) noexcept {
  switch (f) {
    case AreaFormula::SinHalf: return "sin_half";
    case AreaFormula::TanQuarter: return "tan_quarter";
    case AreaFormula::SinQuarter: return "sin_quarter";
    case AreaFormula::Bilinski: return "bilinski";
    case AreaFormula::GaussBonnet: return "gauss_bonnet";
    case AreaFormula::Euclidean: return "euclidean";
  }
  return "unknown";
}

void TriSides::validate() const {
  if (!(a > 0 && b > 0 && c > 0)) throw Error(ErrorCode::NotATriangle, "sides must be positive");
  const long double h = s();
  if (h - a < 0 || h - b < 0 || h - c < 0) {
    throw Error(ErrorCode::NotATriangle, "triangle inequality violated");
  }
}

int QuadSides::zero_side() const {
  const std::array<long double, 4> x{a, b, c, d};
  for (int i = 0; i < 4; ++i)
    if (x[i] == 0) return i;
  return -1;
}

void QuadSides::validate() const {
  const std::array<long double, 4> x{a, b, c, d};
  int zeros = 0;
  for (long double v : x) {
    if (!(v >= 0)) throw Error(ErrorCode::NotAQuadrilateral, "sides must be non-negative");
    if (v == 0) ++zeros;
  }
  if (zeros > 1) throw Error(ErrorCode::NotAQuadrilateral, "more than one zero side");
  const long double h = s();
  for (long double v : x)
    if (h - v < 0) throw Error(ErrorCode::NotAQuadrilateral, "a side exceeds the sum of the others");
}

long double half_sinh(long double x) { return std::sinh(x / 2); }

std::array<long double, 3> triangle_angles(const TriSides& t) {
  t.validate();
  auto opposite = [](long double x, long double y, long double z) {
    return safe_acos((std::cosh(y) * std::cosh(z) - std::cosh(x)) / (std::sinh(y) * std::sinh(z)));
  };
  return {opposite(t.a, t.b, t.c), opposite(t.b, t.c, t.a), opposite(t.c, t.a, t.b)};
}

AreaResult triangle_area(const TriSides& t, AreaFormula formula) {
  t.validate();
  const long double s = t.s(), a = t.a, b = t.b, c = t.c;
  long double S = 0;
  switch (formula) {
    case AreaFormula::SinHalf: {
      const long double den = 4 * std::pow(ch2(a) * ch2(b) * ch2(c), 2);
      const long double v = std::sinh(s - a) * std::sinh(s - b) * std::sinh(s - c) * std::sinh(s) / den;
      S = 2 * std::asin(std::sqrt(checked(v, 1, "sin^2(S/2)")));
      break;
    }
    case AreaFormula::TanQuarter: {
      const long double v = th2(s - a) * th2(s - b) * th2(s - c) * th2(s);
      S = 4 * std::atan(std::sqrt(checked(v, 1, "tan^2(S/4)")));
      break;
    }
    case AreaFormula::SinQuarter: {
      const long double v =
          half_sinh(s - a) * half_sinh(s - b) * half_sinh(s - c) * half_sinh(s) / (ch2(a) * ch2(b) * ch2(c));
      S = 4 * std::asin(std::sqrt(checked(v, 0.5L, "sin^2(S/4)")));
      break;
    }
    case AreaFormula::Bilinski: {
      const long double v =
          (std::cosh(a) + std::cosh(b) + std::cosh(c) + 1) / (4 * ch2(a) * ch2(b) * ch2(c));
      S = 2 * safe_acos(v);
      break;
    }
    case AreaFormula::GaussBonnet: {
      const auto ang = triangle_angles(t);
      S = kPi - ang[0] - ang[1] - ang[2];
      break;
    }
    case AreaFormula::Euclidean:
      throw Error(ErrorCode::InvalidInput, "use heron_euclidean for the Euclidean area");
  }
  return {S, formula};
}

long double heron_euclidean(long double a, long double b, long double c) {
  if (!(a >= 0 && b >= 0 && c >= 0)) throw Error(ErrorCode::NotATriangle, "sides must be non-negative");
  const long double s = (a + b + c) / 2;
  if (s - a < 0 || s - b < 0 || s - c < 0) throw Error(ErrorCode::NotATriangle, "triangle inequality violated");
  return std::sqrt(s * (s - a) * (s - b) * (s - c));
}

long double brahmagupta_euclidean(const QuadSides& q) {
  q.validate();
  const long double s = q.s();
  return std::sqrt((s - q.a) * (s - q.b) * (s - q.c) * (s - q.d));
}

std::pair<long double, long double> cyclic_quad_diagonals(const QuadSides& q) {
  q.validate();
  const long double sa = half_sinh(q.a), sb = half_sinh(q.b), sc = half_sinh(q.c), sd = half_sinh(q.d);
  const long double ptolemy = sa * sc + sb * sd;
  const long double ratio = (sa * sd + sb * sc) / (sa * sb + sc * sd);
  const long double e = 2 * std::asinh(std::sqrt(ratio * ptolemy));
  const long double f = 2 * std::asinh(std::sqrt(ptolemy / ratio));
  return {e, f};
}

QuadAngles cyclic_quad_angles(const QuadSides& q) {
  q.validate();
  const long double a = q.a, b = q.b, c = q.c, d = q.d;
  return {safe_acos(cos_quad_angle(a, b, c, d)), safe_acos(cos_quad_angle(b, c, d, a)),
          safe_acos(cos_quad_angle(c, d, a, b)), safe_acos(cos_quad_angle(d, a, b, c))};
}

long double epsilon_term(const QuadSides& q) {
  const long double s = q.s();
  return half_sinh(q.a) * half_sinh(q.b) * half_sinh(q.c) * half_sinh(q.d) /
         (ch2(s - q.a) * ch2(s - q.b) * ch2(s - q.c) * ch2(s - q.d));
}

long double lemma_H(const QuadSides& q) {
  const long double a = q.a, b = q.b, c = q.c, d = q.d;
  const long double num = std::cosh((a + b - c - d) / 4) * std::cosh((a - b + c - d) / 4) *
                          std::cosh((a - b - c + d) / 4) * std::cosh((a + b + c + d) / 4);
  const long double den = std::cosh((-a + b + c + d) / 4) * std::cosh((a - b + c + d) / 4) *
                          std::cosh((a + b - c + d) / 4) * std::cosh((a + b + c - d) / 4);
  return num / den;
}

AreaResult cyclic_quad_area(const QuadSides& q, AreaFormula formula) {
  q.validate();
  if (const int z = q.zero_side(); z >= 0) return triangle_area(drop_zero_side(q, z), formula);

  const long double a = q.a, b = q.b, c = q.c, d = q.d, s = q.s();
  const long double eps = epsilon_term(q);
  const long double cosh_prod = ch2(a) * ch2(b) * ch2(c) * ch2(d);
  const long double sinh_prod = half_sinh(a) * half_sinh(b) * half_sinh(c) * half_sinh(d);
  // Numerator of the Bilinski form; its sign is the sign of cos(S/2).
  const long double bilinski_num = std::cosh(a) + std::cosh(b) + std::cosh(c) + std::cosh(d) - 4 * sinh_prod;

  long double S = 0;
  switch (formula) {
    case AreaFormula::SinHalf: {
      const long double v = std::sinh(s - a) * std::sinh(s - b) * std::sinh(s - c) * std::sinh(s - d) /
                            (4 * cosh_prod * cosh_prod) * (1 - eps);
      const long double half = std::asin(std::sqrt(checked(v, 1, "sin^2(S/2)")));
      S = 2 * (bilinski_num >= 0 ? half : kPi - half);
      break;
    }
    case AreaFormula::TanQuarter: {
      const long double v = th2(s - a) * th2(s - b) * th2(s - c) * th2(s - d) / (1 - eps);
      S = 4 * std::atan(std::sqrt(checked(v, HUGE_VALL, "tan^2(S/4)")));
      break;
    }
    case AreaFormula::SinQuarter: {
      const long double v =
          half_sinh(s - a) * half_sinh(s - b) * half_sinh(s - c) * half_sinh(s - d) / cosh_prod;
      S = 4 * std::asin(std::sqrt(checked(v, 1, "sin^2(S/4)")));
      break;
    }
    case AreaFormula::Bilinski: {
      S = 2 * std::acos(checked(bilinski_num / (4 * cosh_prod) + 1, 2, "cos(S/2) + 1") - 1);
      break;
    }
    case AreaFormula::GaussBonnet: {
      const QuadAngles ang = cyclic_quad_angles(q);
      S = 2 * kPi - ang.A - ang.B - ang.C - ang.D;
      break;
    }
    case AreaFormula::Euclidean:
      throw Error(ErrorCode::InvalidInput, "use brahmagupta_euclidean for the Euclidean area");
  }
  return {S, formula};
}

AreaResult bicentric_area(const QuadSides& q) {
  q.validate();
  if (std::abs(q.a + q.c - q.b - q.d) > 1e-12L) {
    throw Error(ErrorCode::NotBicentric, "a + c must equal b + d");
  }
  const long double v = th2(q.a) * th2(q.b) * th2(q.c) * th2(q.d);
  return {4 * std::asin(std::sqrt(checked(v, 1, "sin^2(S/4)"))), AreaFormula::SinQuarter};
}

AreaResult trapezoid_area(const QuadSides& q) {
  q.validate();
  const long double a = q.a, b = q.b, c = q.c, d = q.d;
  if (std::abs(b - d) <= 1e-12L) {
    throw Error(ErrorCode::ParallelSides, "b = d: the sides do not determine the area");
  }
  const long double num = std::pow(std::sinh((b + d) / 2), 2) * std::sinh((a + b - c - d) / 4) *
                          std::sinh((a + b + c - d) / 4) * std::sinh((-a + b + c - d) / 4) *
                          std::sinh((a - b + c + d) / 4);
  const long double den = std::pow(std::sinh((b - d) / 2), 2) * std::cosh((a - b - c - d) / 4) *
                          std::cosh((a - b + c - d) / 4) * std::cosh((a + b - c + d) / 4) *
                          std::cosh((a + b + c + d) / 4);
  const long double v = num / den;
  if (v < -kRadicandTol) throw Error(ErrorCode::NotRealizable, "trapezoid radicand is negative");
  return {4 * std::atan(std::sqrt(std::max(v, 0.0L))), AreaFormula::TanQuarter};
}

long double trapezoid_area_euclidean(long double a, long double b, long double c, long double d) {
  if (std::abs(b - d) <= 1e-12L) {
    throw Error(ErrorCode::ParallelSides, "b = d: the sides do not determine the area");
  }
  const long double v = (b + d) * (b + d) * (a + b - c - d) * (a + b + c - d) * (-a + b + c - d) *
                        (a - b + c + d) / (16 * (b - d) * (b - d));
  if (v < -kRadicandTol) throw Error(ErrorCode::NotRealizable, "trapezoid radicand is negative");
  return std::sqrt(std::max(v, 0.0L));
}

}  // namespace curvavol
