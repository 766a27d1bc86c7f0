#include "treedyn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace treedyn {

namespace {

constexpr cplx kI{0.0, 1.0};

double reduce_mod(double x, double period) {
  double r = std::fmod(x + period / 2.0, period);
  if (r < 0.0) r += period;
  return r - period / 2.0;
}

void require_exponent(double p) {
  if (std::isnan(p) || p < 1.0) {
    throw Error(ErrorKind::ExponentOutOfRange, "exponent p must lie in [1, inf], got " + std::to_string(p));
  }
}

// Distance from a reduced point to tau Z and to tau/2 + tau Z.
double distance_to_zero_class(cplx z) { return std::abs(z); }

double distance_to_half_class(cplx z, double tau) {
  return std::min(std::abs(z - tau / 2.0), std::abs(z + tau / 2.0));
}

}  // namespace

SpectralPoint::SpectralPoint(cplx z, const TreeParams& params)
    : z_(reduce_mod(z.real(), params.tau()), z.imag()) {}

LebesgueExponent::LebesgueExponent(double p) : p_(p), delta_(delta_p(p)) {}

bool LebesgueExponent::is_infinite() const noexcept { return std::isinf(p_); }

double LebesgueExponent::conjugate() const noexcept {
  if (p_ == 1.0) return std::numeric_limits<double>::infinity();
  if (is_infinite()) return 1.0;
  return p_ / (p_ - 1.0);
}

cplx qpow(cplx w, const TreeParams& params) { return std::exp(w * params.log_q()); }

cplx gamma(cplx z, const TreeParams& params) {
  const double q = params.q();
  return 1.0 - (qpow(0.5 + kI * z, params) + qpow(0.5 - kI * z, params)) / (q + 1.0);
}

cplx c_function(const SpectralPoint& z, const TreeParams& params) {
  const double tau = params.tau();
  if (distance_to_zero_class(z.z()) < kPoleTolerance || distance_to_half_class(z.z(), tau) < kPoleTolerance) {
    throw Error(ErrorKind::PoleAtHalfPeriod, "c-function has a pole at z in (tau/2)Z");
  }
  const double q = params.q();
  const cplx iz = kI * z.z();
  const cplx num = qpow(0.5 + iz, params) - qpow(-0.5 - iz, params);
  const cplx den = qpow(iz, params) - qpow(-iz, params);
  return std::sqrt(q) / (q + 1.0) * num / den;
}

double c_function_inverse_square(double s, const TreeParams& params) {
  // |c(s)|^2 = q (q + 1/q - 2 cos 2θ) / ((q+1)^2 4 sin^2 θ), θ = s log q.
  const double q = params.q();
  const double theta = s * params.log_q();
  const double sin_t = std::sin(theta);
  return 4.0 * (q + 1.0) * (q + 1.0) * sin_t * sin_t /
         (q * q + 1.0 - 2.0 * q * std::cos(2.0 * theta));
}

cplx phi(const SpectralPoint& z, int n, const TreeParams& params) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "phi needs n >= 0");
  const double q = params.q();
  const double special = ((q - 1.0) / (q + 1.0) * n + 1.0) * std::pow(q, -0.5 * n);
  if (distance_to_zero_class(z.z()) < kBranchSwitchDistance) return special;
  if (distance_to_half_class(z.z(), params.tau()) < kBranchSwitchDistance) {
    return (n % 2 == 0) ? special : -special;
  }
  const cplx iz = kI * z.z();
  const SpectralPoint minus_z(-z.z(), params);
  return c_function(z, params) * qpow((iz - 0.5) * static_cast<double>(n), params) +
         c_function(minus_z, params) * qpow((-iz - 0.5) * static_cast<double>(n), params);
}

RadialSequence spherical_function(const SpectralPoint& z, int max_n, const TreeParams& params) {
  std::vector<cplx> values;
  values.reserve(static_cast<std::size_t>(max_n + 1));
  for (int n = 0; n <= max_n; ++n) values.push_back(phi(z, n, params));
  return RadialSequence(params, std::move(values));
}

double delta_p(double p) {
  require_exponent(p);
  return 1.0 / p - 0.5;
}

Region strip_contains(cplx z, double p) {
  const double width = std::abs(delta_p(p));
  const double gap = std::abs(z.imag()) - width;
  if (std::abs(gap) <= kBoundaryTolerance) return Region::Boundary;
  return gap < 0.0 ? Region::Interior : Region::Outside;
}

double ellipse_residual(cplx w, double p, const TreeParams& params) {
  const double q = params.q();
  const double b = 2.0 * std::sqrt(q) / (q + 1.0);
  const double d = delta_p(p) * params.log_q();
  const double x = (1.0 - w.real()) / (b * std::cosh(d));
  if (d == 0.0) {
    // p = 2: the ellipse collapses to the segment [1 - b, 1 + b].
    if (std::abs(w.imag()) > kBoundaryTolerance) return std::numeric_limits<double>::infinity();
    return x * x - 1.0;
  }
  const double y = w.imag() / (b * std::sinh(d));
  return x * x + y * y - 1.0;
}

SpectrumVerdict spectrum_membership(cplx w, double p, const TreeParams& params) {
  const double residual = ellipse_residual(w, p, params);
  if (delta_p(p) == 0.0) {
    // Every point of the segment is a boundary point of the plane region.
    return {residual <= kBoundaryTolerance ? Region::Boundary : Region::Outside, residual};
  }
  if (std::abs(residual) <= kBoundaryTolerance) return {Region::Boundary, residual};
  return {residual < 0.0 ? Region::Interior : Region::Outside, residual};
}

std::vector<double> ellipse_parameters(int count, const TreeParams& params) {
  if (count < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 boundary samples");
  std::vector<double> s(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    s[static_cast<std::size_t>(k)] = -params.tau() / 2.0 + params.tau() * k / count;
  }
  return s;
}

std::vector<cplx> ellipse_boundary_points(double p, const TreeParams& params, int count) {
  const double d = delta_p(p);
  if (d == 0.0) throw Error(ErrorKind::ExponentOutOfRange, "the L^2 spectrum is a segment, not an ellipse");
  std::vector<cplx> out;
  for (const double s : ellipse_parameters(count, params)) out.push_back(gamma(cplx(s, d), params));
  return out;
}

bool point_spectrum_contains(cplx w, double p, const TreeParams& params) {
  if (std::isinf(p)) throw Error(ErrorKind::ExponentOutOfRange, "point spectrum query needs p < inf");
  require_exponent(p);
  if (p <= 2.0) return false;
  return spectrum_membership(w, p, params).classification == Region::Interior;
}

double phi_p_threshold(cplx a, double p, const TreeParams& params) {
  require_exponent(p);
  if (!(p > 2.0) || std::isinf(p)) {
    throw Error(ErrorKind::ExponentOutOfRange, "Phi_p is defined for 2 < p < inf");
  }
  const double d = delta_p(p);
  const double scale = 1.0 - gamma(cplx(0.0, d), params).real();
  const double t = std::tanh(d * params.log_q());
  return scale * std::sqrt(a.real() * a.real() + t * t * a.imag() * a.imag());
}

double plancherel_density(double s, const TreeParams& params) {
  const double q = params.q();
  return q / (2.0 * params.tau() * (q + 1.0)) * c_function_inverse_square(s, params);
}

}  // namespace treedyn
