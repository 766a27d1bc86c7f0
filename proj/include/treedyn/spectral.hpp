#pragma once

// Closed-form spectral objects of the Laplacian: the eigenvalue map gamma, the
// c-function, spherical functions, the L^p strips and spectral ellipses, the
// Plancherel density and the chaoticity threshold Phi_p.

#include <vector>

#include "treedyn/tree.hpp"

namespace treedyn {

/// Distance to (tau/2)Z below which the c-function is treated as singular.
inline constexpr double kPoleTolerance = 1e-9;
/// Distance to tauZ or tau/2 + tauZ at which phi switches to the special branches.
inline constexpr double kBranchSwitchDistance = 1e-6;
/// Width of the band treated as "on the boundary" by strip and ellipse classifiers.
inline constexpr double kBoundaryTolerance = 1e-11;

/// Spectral parameter reduced modulo tau to Re z in [-tau/2, tau/2).
class SpectralPoint {
 public:
  SpectralPoint(cplx z, const TreeParams& params);

  cplx z() const noexcept { return z_; }
  double re() const noexcept { return z_.real(); }
  double im() const noexcept { return z_.imag(); }

 private:
  cplx z_;
};

/// A Lebesgue exponent p in [1, inf] (inf spelled as +infinity).
class LebesgueExponent {
 public:
  explicit LebesgueExponent(double p);

  double p() const noexcept { return p_; }
  bool is_infinite() const noexcept;
  /// delta_p = 1/p - 1/2; equals 1/2 at p = 1 and -1/2 at p = inf.
  double delta() const noexcept { return delta_; }
  double conjugate() const noexcept;

 private:
  double p_;
  double delta_;
};

enum class Region { Interior, Boundary, Outside };

struct SpectrumVerdict {
  Region classification;
  /// Left-hand side of the ellipse inequality minus one.
  double residual;
};

/// q^w with the branch exp(w log q).
cplx qpow(cplx w, const TreeParams& params);

cplx gamma(cplx z, const TreeParams& params);
inline cplx gamma(const SpectralPoint& z, const TreeParams& params) { return gamma(z.z(), params); }

/// Throws PoleAtHalfPeriod within kPoleTolerance of (tau/2)Z.
cplx c_function(const SpectralPoint& z, const TreeParams& params);

/// |c(s)|^{-2} for real s, continued by zero at the poles of c.
double c_function_inverse_square(double s, const TreeParams& params);

/// Spherical function phi_z at distance n from the root.
cplx phi(const SpectralPoint& z, int n, const TreeParams& params);
/// phi_z at n = 0..max_n.
RadialSequence spherical_function(const SpectralPoint& z, int max_n, const TreeParams& params);

double delta_p(double p);
Region strip_contains(cplx z, double p);

double ellipse_residual(cplx w, double p, const TreeParams& params);
SpectrumVerdict spectrum_membership(cplx w, double p, const TreeParams& params);

/// Parameters s_k = -tau/2 + k tau / count, k = 0..count-1.
std::vector<double> ellipse_parameters(int count, const TreeParams& params);
/// gamma(s_k + i delta_p): the boundary of the L^p spectrum.
std::vector<cplx> ellipse_boundary_points(double p, const TreeParams& params, int count);

bool point_spectrum_contains(cplx w, double p, const TreeParams& params);

/// (1 - gamma(i delta_p)) * sqrt((Re a)^2 + tanh^2(delta_p log q) (Im a)^2), p in (2, inf).
double phi_p_threshold(cplx a, double p, const TreeParams& params);

/// Density of the Plancherel measure on [-tau/2, tau/2).
double plancherel_density(double s, const TreeParams& params);

}  // namespace treedyn
