#include "treedyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>

namespace treedyn {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite_above_two(double p) {
  delta_p(p);
  if (!(p > 2.0) || std::isinf(p)) {
    throw Error(ErrorKind::ExponentOutOfRange, "this operation needs 2 < p < inf");
  }
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Verdicts fixed by p alone, or nullopt when 2 < p < inf.
std::optional<ChaosVerdict> verdict_from_exponent(double p) {
  delta_p(p);
  if (std::isinf(p)) {
    return ChaosVerdict{Classification::NotChaotic_NoSeparability, {},
                        "L^inf is not separable, so no semigroup on it is hypercyclic"};
  }
  if (p <= 2.0) {
    return ChaosVerdict{Classification::NotChaotic_NoPeriodicPoints, {},
                        "for p <= 2 the semigroup has no non-trivial periodic point"};
  }
  return std::nullopt;
}

double reduce_s(double s, double tau) {
  double r = std::fmod(s + tau / 2.0, tau);
  if (r < 0.0) r += tau;
  return r - tau / 2.0;
}

std::vector<double> chebyshev_heights(double width, int count) {
  std::vector<double> y(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    y[static_cast<std::size_t>(k)] = width * std::cos((2.0 * k + 1.0) * kPi / (2.0 * count));
  }
  return y;
}

// Golden-section search for the maximum of g on [lo, hi].
double golden_max(const std::function<double(double)>& g, double lo, double hi) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - ratio * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + ratio * (b - a);
      gd = g(d);
    }
  }
  return std::max(gc, gd);
}

// Extremes of Re Gamma on the horizontal line Im z = y (one period in s).
std::pair<double, double> line_extrema(const Generator& gen, double y, const TreeParams& params) {
  constexpr int kScan = 4096;
  const double tau = params.tau();
  auto re = [&](double s) { return composed_symbol(gen, cplx(s, y), params).real(); };
  int imax = 0, imin = 0;
  double vmax = -std::numeric_limits<double>::infinity(), vmin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kScan; ++k) {
    const double v = re(-tau / 2.0 + tau * k / kScan);
    if (v > vmax) vmax = v, imax = k;
    if (v < vmin) vmin = v, imin = k;
  }
  const double h = tau / kScan;
  const double top = golden_max(re, -tau / 2.0 + h * (imax - 1), -tau / 2.0 + h * (imax + 1));
  const double bottom = -golden_max([&](double s) { return -re(s); }, -tau / 2.0 + h * (imin - 1),
                                    -tau / 2.0 + h * (imin + 1));
  return {std::max(vmax, top), std::min(vmin, bottom)};
}

}  // namespace

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Chaotic: return "Chaotic";
    case Classification::NotHypercyclic: return "NotHypercyclic";
    case Classification::NotChaotic_NoSeparability: return "NotChaotic_NoSeparability";
    case Classification::NotChaotic_NoPeriodicPoints: return "NotChaotic_NoPeriodicPoints";
    case Classification::Inconclusive_Numeric: return "Inconclusive_Numeric";
  }
  return "Unknown";
}

ChaosVerdict classify_affine(double p, cplx a, cplx b, const TreeParams& params) {
  if (a == cplx(0.0)) throw Error(ErrorKind::ZeroCoefficient, "affine generator needs a != 0");
  if (auto fixed = verdict_from_exponent(p)) return *fixed;

  const double phi = phi_p_threshold(a, p, params);
  const double lo = -a.real() - phi;
  const double hi = -a.real() + phi;
  ChaosVerdict v;
  v.evidence.interval = std::make_pair(lo, hi);
  const bool inside = lo < b.real() && b.real() < hi;
  v.classification = inside ? Classification::Chaotic : Classification::NotHypercyclic;
  v.notes = inside ? "Re b lies inside the chaotic interval; the semigroup is chaotic and hypercyclic"
                   : "Re b lies outside the open chaotic interval; for affine generators chaotic and "
                     "hypercyclic coincide, so the semigroup is not hypercyclic";
  if (b.imag() != 0.0) v.notes += "; Im b = " + format_double(b.imag()) + " only rotates the orbit and is ignored";
  return v;
}

std::pair<double, double> heat_interval(double p, const TreeParams& params) {
  require_finite_above_two(p);
  const double d = delta_p(p);
  return {gamma(cplx(0.0, d), params).real(), gamma(cplx(params.tau() / 2.0, d), params).real()};
}

std::pair<double, double> schrodinger_interval(double p, const TreeParams& params) {
  require_finite_above_two(p);
  const double d = delta_p(p);
  const double quarter = params.tau() / 4.0;
  return {gamma(cplx(quarter, d), params).imag(), gamma(cplx(-quarter, d), params).imag()};
}

cplx composed_symbol(const Generator& gen, cplx z, const TreeParams& params) { return gen(gamma(z, params)); }

ChaosVerdict classify_analytic(double p, const Generator& gen, const TreeParams& params, ClassifierGrid grid) {
  if (auto fixed = verdict_from_exponent(p)) return *fixed;
  if (grid.s_points < 8 || grid.y_points < 1) throw Error(ErrorKind::InvalidArgument, "classifier grid too coarse");

  const double tau = params.tau();
  const double width = std::abs(delta_p(p));
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const cplx first = composed_symbol(gen, cplx(-tau / 2.0, 0.0), params);
  double spread = 0.0;
  int samples = 0;
  for (const double y : chebyshev_heights(width, grid.y_points)) {
    for (int k = 0; k < grid.s_points; ++k) {
      const cplx g = composed_symbol(gen, cplx(-tau / 2.0 + tau * k / grid.s_points, y), params);
      lo = std::min(lo, g.real());
      hi = std::max(hi, g.real());
      spread = std::max(spread, std::abs(g - first));
      ++samples;
    }
  }
  if (spread <= 1e-12 * std::max(1.0, std::abs(first))) {
    throw Error(ErrorKind::ConstantComposition, "f(gamma(z)) is constant on the strip");
  }
  // Re Gamma is harmonic, so its extremes over the strip sit on the boundary lines.
  for (const double y : {width * (1.0 - 1e-12), -width * (1.0 - 1e-12)}) {
    const auto [top, bottom] = line_extrema(gen, y, params);
    hi = std::max(hi, top);
    lo = std::min(lo, bottom);
  }

  ChaosVerdict v;
  v.evidence.re_gamma_min = lo;
  v.evidence.re_gamma_max = hi;
  v.evidence.samples = samples;
  v.evidence.sign_change = lo < -kSignThreshold && hi > kSignThreshold;
  if (v.evidence.sign_change) {
    v.classification = Classification::Chaotic;
    v.notes = "Re f(gamma(z)) takes both signs on the open strip, so f(gamma) meets the imaginary axis";
    if (gen.is_affine()) v.evidence.interval = classify_affine(p, gen.a(), gen.b(), params).evidence.interval;
    return v;
  }
  if (gen.is_affine()) {
    auto closed = classify_affine(p, gen.a(), gen.b(), params);
    closed.evidence.re_gamma_min = lo;
    closed.evidence.re_gamma_max = hi;
    closed.evidence.samples = samples;
    return closed;
  }
  v.classification = Classification::Inconclusive_Numeric;
  v.notes = "Re f(gamma(z)) kept one sign on every sample; this does not prove the semigroup is not chaotic";
  return v;
}

PeriodicWitness find_periodic_witness(double p, const Generator& gen, double tol, const TreeParams& params,
                                      ClassifierGrid grid) {
  delta_p(p);
  if (std::isinf(p)) throw Error(ErrorKind::ExponentOutOfRange, "periodic points are not searched on L^inf");
  if (p <= 2.0) throw Error(ErrorKind::NoRootFound, "for p <= 2 the open strip carries no periodic points");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");

  const double tau = params.tau();
  auto re = [&](double s, double y) { return composed_symbol(gen, cplx(s, y), params).real(); };

  std::optional<PeriodicWitness> best;
  double worst_residual = 0.0;
  auto consider = [&](double s, double y) {
    const cplx g = composed_symbol(gen, cplx(s, y), params);
    const double t0 = std::abs(g.imag()) > 1e-14 ? 2.0 * kPi / std::abs(g.imag()) : 1.0;
    const double residual = std::abs(std::exp(t0 * g) - 1.0);
    if (residual > tol) {
      worst_residual = std::max(worst_residual, residual);
      return;
    }
    if (!best || std::abs(g.imag()) > std::abs(best->gamma_value.imag())) {
      best = PeriodicWitness{SpectralPoint(cplx(s, y), params), t0, g, residual};
    }
  };

  for (const double y : chebyshev_heights(std::abs(delta_p(p)), grid.y_points)) {
    double s_prev = -tau / 2.0;
    double v_prev = re(s_prev, y);
    for (int k = 1; k <= grid.s_points; ++k) {
      const double s = -tau / 2.0 + tau * k / grid.s_points;
      const double v = re(s, y);
      if (v_prev == 0.0) {
        consider(s_prev, y);
      } else if ((v_prev < 0.0) != (v < 0.0) && v != 0.0) {
        double a = s_prev, b = s, fa = v_prev;
        for (int it = 0; it < 200 && b - a > 1e-16 * tau; ++it) {
          const double m = 0.5 * (a + b);
          const double fm = re(m, y);
          if (fm == 0.0) {
            a = b = m;
            break;
          }
          if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
          } else {
            b = m;
          }
        }
        consider(0.5 * (a + b), y);
      }
      s_prev = s;
      v_prev = v;
    }
  }
  if (best) return *best;
  if (worst_residual > 0.0) {
    throw Error(ErrorKind::NoConvergence, "roots of Re f(gamma) found but the best residual " +
                                              format_double(worst_residual) + " exceeds tolerance");
  }
  throw Error(ErrorKind::NoRootFound, "Re f(gamma(z)) has no sign change on the sampled strip");
}

double affine_growth_rate(cplx a, cplx b, const TreeParams& params) {
  const double t = std::tanh(0.5 * params.log_q());
  return a.real() + b.real() + std::sqrt(a.real() * a.real() + t * t * a.imag() * a.imag());
}

std::vector<OrbitSample> orbit_norm_trajectory(const Generator& gen, const SpectralPoint& z,
                                               const std::vector<double>& times, double p, int ball_radius,
                                               const TreeParams& params, double tol, int max_terms) {
  delta_p(p);
  if (ball_radius < 0) throw Error(ErrorKind::InvalidArgument, "ball radius must be >= 0");
  const cplx g = composed_symbol(gen, z.z(), params);
  std::vector<OrbitSample> out;
  for (const double t : times) {
    const int cost = semigroup_radius_cost(gen, t, tol, max_terms);
    const auto phi_z = TreeFunction::radial_lift(spherical_function(z, ball_radius + cost, params));
    const auto evolved = semigroup_apply(gen, t, phi_z, tol, max_terms).restricted(ball_radius);
    const auto base = phi_z.restricted(ball_radius);
    const double base_norm = base.lp_norm(p);
    const cplx multiplier = std::exp(t * g);
    OrbitSample sample;
    sample.t = t;
    sample.predicted = std::exp(t * g.real());
    sample.measured = evolved.lp_norm(p) / base_norm;
    sample.pointwise_error = (evolved - base.scaled(multiplier)).sup_norm();
    sample.preimage_ratio = base.scaled(1.0 / multiplier).lp_norm(p) / base_norm;
    out.push_back(sample);
  }
  return out;
}

HExtrema h_extrema(cplx a, double b, double p, const TreeParams& params) {
  require_finite_above_two(p);
  const double q = params.q();
  const double inv_p = 1.0 / p;
  const double big_a = (std::pow(q, inv_p) + std::pow(q, 1.0 - inv_p)) / (q + 1.0);
  const double big_b = (std::pow(q, inv_p) - std::pow(q, 1.0 - inv_p)) / (q + 1.0);
  // h(s) = x + b - A x cos θ - B y sin θ = x + b - R cos(θ - θ0), θ = s log q.
  const double phase = std::atan2(big_b * a.imag(), big_a * a.real());
  const double phi = phi_p_threshold(a, p, params);
  const double tau = params.tau();
  HExtrema e;
  e.max = a.real() + phi + b;
  e.min = a.real() - phi + b;
  e.argmin = reduce_s(phase / params.log_q(), tau);
  e.argmax = reduce_s((phase + kPi) / params.log_q(), tau);
  return e;
}

}  // namespace treedyn
