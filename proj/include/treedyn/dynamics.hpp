#pragma once

// Chaos classification for semigroups e^{t f(L)} on L^p of the tree, periodic
// points built from Poisson transforms, eigen-orbit checks and the extrema of
// h(s) = Re(a gamma(s + i delta_p)) + b.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treedyn/operators.hpp"
#include "treedyn/spectral.hpp"

namespace treedyn {

enum class Classification {
  Chaotic,
  NotHypercyclic,
  NotChaotic_NoSeparability,
  NotChaotic_NoPeriodicPoints,
  Inconclusive_Numeric,
};

std::string to_string(Classification c);

struct ChaosEvidence {
  /// Chaotic interval for Re b (affine generators, 2 < p < inf).
  std::optional<std::pair<double, double>> interval;
  /// Sampled extrema of Re Gamma over the open strip (numeric classifier).
  std::optional<double> re_gamma_min;
  std::optional<double> re_gamma_max;
  /// True when the samples of Re Gamma took both signs beyond the threshold.
  bool sign_change = false;
  int samples = 0;
};

struct ChaosVerdict {
  Classification classification;
  ChaosEvidence evidence;
  std::string notes;
};

struct PeriodicWitness {
  SpectralPoint z0;
  double t0;
  cplx gamma_value;  // Gamma(z0) = f(gamma(z0))
  double residual;   // |e^{t0 Gamma(z0)} - 1|
};

struct ClassifierGrid {
  int s_points = 512;
  int y_points = 33;
};

/// |Re Gamma| below this is treated as zero by the sign tests.
inline constexpr double kSignThreshold = 1e-12;

ChaosVerdict classify_affine(double p, cplx a, cplx b, const TreeParams& params);

/// (gamma(i delta_p), gamma(tau/2 + i delta_p)); requires 2 < p < inf.
std::pair<double, double> heat_interval(double p, const TreeParams& params);
/// (Im gamma(tau/4 + i delta_p), Im gamma(-tau/4 + i delta_p)); requires 2 < p < inf.
std::pair<double, double> schrodinger_interval(double p, const TreeParams& params);

/// Gamma(z) = f(gamma(z)).
cplx composed_symbol(const Generator& gen, cplx z, const TreeParams& params);

ChaosVerdict classify_analytic(double p, const Generator& gen, const TreeParams& params,
                               ClassifierGrid grid = {});

/// A point z0 of the open strip with Re Gamma(z0) = 0 and the period
/// t0 = 2 pi / |Im Gamma(z0)| (t0 = 1 when Gamma(z0) = 0). Among the roots
/// found, the one with the largest |Im Gamma| (shortest period) wins.
/// Throws NoRootFound when there is none (always for p <= 2) and
/// NoConvergence if every root misses tol.
PeriodicWitness find_periodic_witness(double p, const Generator& gen, double tol, const TreeParams& params,
                                      ClassifierGrid grid = {});

/// Exponential growth rate of e^{t f(L)} over the whole L^inf spectrum for an
/// affine generator: the rate at which rounding errors can be amplified.
double affine_growth_rate(cplx a, cplx b, const TreeParams& params);

struct OrbitSample {
  double t;
  double predicted;        // e^{t Re Gamma(z)}
  double measured;         // ||T(t) phi_z||_p / ||phi_z||_p on the ball
  double pointwise_error;  // max |T(t) phi_z - e^{t Gamma(z)} phi_z| on the ball
  double preimage_ratio;   // ||g_t||_p / ||phi_z||_p for g_t = e^{-t Gamma(z)} phi_z
};

std::vector<OrbitSample> orbit_norm_trajectory(const Generator& gen, const SpectralPoint& z,
                                               const std::vector<double>& times, double p, int ball_radius,
                                               const TreeParams& params, double tol = 1e-13,
                                               int max_terms = 400);

struct HExtrema {
  double max;
  double min;
  double argmax;  // s in [-tau/2, tau/2)
  double argmin;
};

HExtrema h_extrema(cplx a, double b, double p, const TreeParams& params);

}  // namespace treedyn
