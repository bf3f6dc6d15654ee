#pragma once

#include <string_view>

#include "curvavol/gram.hpp"
#include "curvavol/specfun.hpp"

namespace curvavol {

enum class VolumeMethod {
  CayleyMenger,
  Milnor,
  LogRatioIntegral,
  SforzaH3,
  SforzaS3,
  SchlafliSeries,
  Bolyai,
};

std::string_view to_string(VolumeMethod method) noexcept;

struct VolumeResult {
  double value = 0.0;
  VolumeMethod method = VolumeMethod::CayleyMenger;
  double error_estimate = 0.0;
};

enum class Space { E3, S3, H3 };

std::string_view to_string(Space space) noexcept;

/// Euclidean tetrahedron from its six edge lengths (bordered Cayley-Menger
/// determinant, 288 V^2 = det).
VolumeResult volume_euclidean_cm(const EdgeLengthSet& d);

/// Ideal hyperbolic tetrahedron, V = Lambda(A) + Lambda(B) + Lambda(C).
/// C must equal pi - A - B to within 1e-10 and is renormalised to it.
VolumeResult volume_ideal(double A, double B, double C);

/// Parameters of the log-ratio integrand used by volume_dm.
struct DMIntegrandParams {
  double k1, k2, k3, k4, S;
  double z1, z2;
};

DMIntegrandParams dm_params(const DihedralAngleSet& angles);

/// Compact hyperbolic tetrahedron as a single integral over z in [z1, z2]
/// of the log of a ratio of four cosines to four sines.
VolumeResult volume_dm(const DihedralAngleSet& angles, const Tolerance& tol = Tolerance::tight());

/// Root of det G(A) = 0 bounding the degeneration path used by the Sforza
/// integrals: nearest root above A in H^3 (the tetrahedron shrinks to a
/// point as A grows), nearest root below A in S^3.
double degeneration_root(const DihedralAngleSet& angles, Space space);

/// Compact hyperbolic tetrahedron by integrating l_A / 2 along the path in A
/// from the current value to the degeneration root.
VolumeResult volume_sforza_h3(const DihedralAngleSet& angles,
                              const Tolerance& tol = Tolerance::tight());

/// Spherical tetrahedron: integral of l_A / 2 from the degeneration root,
/// plus the volume of the degenerate limit (zero unless the vertices split
/// between two antipodal points).
VolumeResult volume_sforza_s3(const DihedralAngleSet& angles,
                              const Tolerance& tol = Tolerance::tight());

/// Volume (pi/2) * area of the spherical suspension a spherical Gram matrix
/// with det G = 0 bounds; zero when its null vector has one sign.
double degenerate_spherical_volume(const GramMatrix& G);

VolumeResult volume_orthoscheme_spherical(double A, double B, double C,
                                          const Tolerance& tol = Tolerance::tight());

/// Hyperbolic orthoscheme via volume_dm on orthoscheme_angles(A, B, C).
VolumeResult volume_orthoscheme_hyperbolic(double A, double B, double C,
                                           const Tolerance& tol = Tolerance::tight());

/// Hyperbolic orthoscheme from planar angles alpha, beta, gamma and the
/// length z of the last edge of its orthogonal chain.
VolumeResult volume_bolyai(double alpha, double beta, double gamma, double z,
                           const Tolerance& tol = Tolerance::tight());

/// |central difference of V in one dihedral angle - dV/dtheta|, where
/// dV/dtheta = -l/2 in H^3 and +l/2 in S^3 for the edge carrying the angle.
double schlafli_variation_residual(const DihedralAngleSet& angles, Dihedral which, double h,
                                   Space space, const Tolerance& tol = Tolerance::tight());

}  // namespace curvavol
