#include "curvavol/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "curvavol/error.hpp"

namespace curvavol {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// zeta(2n) / (n (2n + 1)); the Clausen expansion converges like (theta/2pi)^(2n).
constexpr int kClausenTerms = 40;

const std::array<double, kClausenTerms>& clausen_coefficients() {
  static const std::array<double, kClausenTerms> coeffs = [] {
    std::array<double, kClausenTerms> c{};
    for (int n = 1; n <= kClausenTerms; ++n) {
      c[n - 1] = std::riemann_zeta(2.0 * n) / (n * (2.0 * n + 1.0));
    }
    return c;
  }();
  return coeffs;
}

// sum_{m>=1} cos(m theta) / m^2 in closed form (Bernoulli polynomial B2).
double cosine_square_series(double theta) {
  const double t = std::abs(std::remainder(theta, 2.0 * kPi));
  return kPi * kPi / 6.0 - kPi * t / 2.0 + t * t / 4.0;
}

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error, floor;  // floor: roundoff level of the segment
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  if (!std::isfinite(fc)) {
    throw Error(ErrorCode::DomainError, "integrand not finite at x = " + std::to_string(center));
  }
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double v1 = f(center - dx);
    const double v2 = f(center + dx);
    if (!std::isfinite(v1) || !std::isfinite(v2)) {
      throw Error(ErrorCode::DomainError,
                  "integrand not finite near x = " + std::to_string(center) + " +- " +
                      std::to_string(dx));
    }
    f1[j] = v1;
    f2[j] = v2;
    resk += kWgk[j] * (v1 + v2);
    resabs += kWgk[j] * (std::abs(v1) + std::abs(v2));
    if (j % 2 == 1) resg += kWg[j / 2] * (v1 + v2);
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const double ahalf = std::abs(half);
  resk *= half;
  resabs *= ahalf;
  resasc *= ahalf;
  double err = std::abs((resk - resg * half));
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double floor = 50.0 * kEps * resabs;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(floor, err);
  }
  return {a, b, resk, err, floor};
}

}  // namespace

void Tolerance::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol >= 0.0) || max_evals == 0) {
    throw Error(ErrorCode::DomainError, "tolerance requires abs_tol > 0, rel_tol >= 0, max_evals > 0");
  }
}

double clausen2(double theta) {
  const double t = std::remainder(theta, 2.0 * kPi);
  if (t == 0.0) return 0.0;
  const double r = (t / (2.0 * kPi)) * (t / (2.0 * kPi));
  const auto& c = clausen_coefficients();
  double power = 1.0;
  double sum = 0.0;
  for (int n = 0; n < kClausenTerms; ++n) {
    power *= r;
    const double term = c[n] * power;
    sum += term;
    if (term < 1e-18 * std::abs(sum)) break;
  }
  return t - t * std::log(std::abs(t)) + t * sum;
}

double lobachevsky(double x) { return 0.5 * clausen2(2.0 * std::remainder(x, kPi)); }

double schlafli_S(double A, double B, double C, const Tolerance& tol) {
  tol.validate();
  for (double angle : {A, B, C}) {
    if (!(angle > 0.0 && angle < kPi)) {
      throw Error(ErrorCode::InvalidAngle, "Schlafli function arguments must lie in (0, pi)");
    }
  }
  const double x = kPi / 2.0 - A;
  const double y = B;
  const double z = kPi / 2.0 - C;
  const double cx = std::cos(x), cy = std::cos(y), cz = std::cos(z);
  const double d2 = cx * cx * cz * cz - cy * cy;
  if (d2 < 0.0) {
    throw Error(ErrorCode::DomainError,
                "cos^2 x cos^2 z - cos^2 y < 0; not a spherical orthoscheme");
  }
  const double D = std::sqrt(d2);
  const double sxsz = std::sin(x) * std::sin(z);
  const double denom = D + sxsz;
  if (!(denom > 0.0)) {
    throw Error(ErrorCode::DomainError, "Schlafli series ratio is undefined (D + sin x sin z <= 0)");
  }
  const double q = (D - sxsz) / denom;
  if (x < 0.0 || z < 0.0) {
    // The series only sees cos(2mx), x^2, ...: it cannot tell A from pi - A.
    throw Error(ErrorCode::DomainError, "Schlafli series needs A, C <= pi/2");
  }
  if (std::abs(q) > 1.0 + 1e-14) {
    throw Error(ErrorCode::DomainError, "Schlafli series diverges (|ratio| > 1)");
  }

  const double polynomial = -x * x + y * y - z * z;
  if (std::abs(std::abs(q) - 1.0) <= 1e-14) {
    // q = +-1: sum cos(m t)/m^2 in closed form; q = -1 shifts each angle by pi/2.
    const double shift = q > 0.0 ? 0.0 : kPi;
    const double series = cosine_square_series(2.0 * x + shift) -
                          cosine_square_series(2.0 * y + shift) +
                          cosine_square_series(2.0 * z + shift) - cosine_square_series(shift);
    return series + polynomial;
  }

  const double aq = std::abs(q);
  double sum = 0.0;
  double qm = 1.0;
  for (std::size_t m = 1; m <= tol.max_evals; ++m) {
    qm *= q;
    const double md = static_cast<double>(m);
    const double numer =
        std::cos(2.0 * md * x) - std::cos(2.0 * md * y) + std::cos(2.0 * md * z) - 1.0;
    sum += qm * numer / (md * md);
    // |numer| <= 4, so the remaining tail is bounded geometrically.
    const double tail = 4.0 * std::abs(qm) * aq / ((md + 1.0) * (md + 1.0) * (1.0 - aq));
    if (tail <= tol.abs_tol || qm == 0.0) return sum + polynomial;
  }
  throw Error(ErrorCode::NonConvergence, "Schlafli series did not converge within max_evals terms");
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, const Tolerance& tol) {
  tol.validate();
  if (!(a <= b)) throw Error(ErrorCode::DomainError, "integrate_adaptive requires a <= b");
  if (a == b) return {0.0, 0.0, 1};

  std::priority_queue<Segment> heap;
  std::vector<Segment> frozen;  // too narrow to split further
  Segment first = gauss_kronrod15(f, a, b);
  std::size_t evals = 15;
  double total = first.value;
  double total_err = first.error;
  double total_floor = first.floor;
  heap.push(first);
  double frozen_err = 0.0;

  // Once the error is mostly roundoff, more splitting cannot help.
  auto tolerance_met = [&] {
    const double target = std::max({tol.abs_tol, tol.rel_tol * std::abs(total), 2.0 * total_floor});
    return total_err - frozen_err <= target;
  };

  int roundoff_hits = 0;
  while (!tolerance_met() && !heap.empty() && roundoff_hits < 10) {
    if (evals + 30 > tol.max_evals) {
      throw Error(ErrorCode::NonConvergence,
                  "adaptive quadrature exhausted max_evals; error estimate " +
                      std::to_string(total_err));
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const double min_width = 64.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b));
    if (worst.b - worst.a <= min_width || mid <= worst.a || mid >= worst.b) {
      frozen_err += worst.error;
      frozen.push_back(worst);
      continue;
    }
    const Segment left = gauss_kronrod15(f, worst.a, mid);
    const Segment right = gauss_kronrod15(f, mid, worst.b);
    evals += 30;
    // Roundoff detection as in QUADPACK qagse: the value settles while the
    // error estimate refuses to shrink.  Then the estimate is noise; stop.
    const double both = left.value + right.value;
    if (std::abs(worst.value - both) <= 1e-5 * std::abs(both) &&
        left.error + right.error >= 0.99 * worst.error) {
      ++roundoff_hits;
    }
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_floor += left.floor + right.floor - worst.floor;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to shed the drift of the running totals.
  double value = 0.0;
  double err = 0.0;
  for (const auto& s : frozen) {
    value += s.value;
    err += s.error;
  }
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {value, err, evals};
}

double find_root_bracketed(const std::function<double(double)>& f, double lo, double hi,
                           const Tolerance& tol) {
  tol.validate();
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (std::signbit(fa) == std::signbit(fb)) {
    throw Error(ErrorCode::NoSignChange, "f(lo) and f(hi) have the same sign");
  }
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (std::size_t iter = 0; iter < tol.max_evals; ++iter) {
    if (std::signbit(fb) == std::signbit(fc)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * kEps * std::abs(b) + 0.5 * tol.abs_tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // Inverse quadratic interpolation, or secant when only two points differ.
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = f(b);
  }
  throw Error(ErrorCode::NonConvergence, "Brent iteration limit reached");
}

}  // namespace curvavol
