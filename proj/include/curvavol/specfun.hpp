#pragma once

#include <cstddef>
#include <functional>

namespace curvavol {

struct Tolerance {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t max_evals = 1'000'000;

  /// Throws DomainError unless abs_tol > 0, rel_tol >= 0, max_evals > 0.
  void validate() const;

  static Tolerance tight() { return {1e-13, 1e-13, 1'000'000}; }
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Clausen function Cl2(theta) = sum_{n>=1} sin(n theta) / n^2.
double clausen2(double theta);

/// Lobachevsky function, Lambda(x) = -int_0^x log|2 sin t| dt = Cl2(2x) / 2.
/// Odd and pi-periodic; accurate to a few ulps over the whole real line.
double lobachevsky(double x);

/// Schlafli function S(A, B, C): four times the volume of the spherical
/// orthoscheme with essential dihedral angles A, B, C.  Evaluated from the
/// power series in q = (D - sin x sin z) / (D + sin x sin z) at
/// (x, y, z) = (pi/2 - A, B, pi/2 - C), D = sqrt(cos^2 x cos^2 z - cos^2 y).
/// Requires A, C in (0, pi/2]; B may be obtuse.
double schlafli_S(double A, double B, double C, const Tolerance& tol = {});

/// Globally adaptive Gauss-Kronrod (7/15) quadrature.  Endpoints are never
/// evaluated, so integrable endpoint singularities are allowed.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, const Tolerance& tol = {});

/// Brent's method.  Requires f(lo) * f(hi) <= 0.
double find_root_bracketed(const std::function<double(double)>& f, double lo, double hi,
                           const Tolerance& tol = {});

}  // namespace curvavol
