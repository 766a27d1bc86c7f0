#include "treedyn/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "treedyn/spectral.hpp"

namespace treedyn {

namespace {

// Storage for a TreeFunction under construction.
struct Buffers {
  int core_radius = 0;
  int radius = 0;
  std::vector<cplx> core;
  std::vector<cplx> tails;
};

Buffers laplacian_buffers(const TreeFunction& f) {
  if (f.radius() < 1) {
    throw Error(ErrorKind::RadiusExhausted, "the Laplacian needs a validity radius >= 1");
  }
  const auto& params = f.params();
  const int q = params.q();
  const double inv_deg = 1.0 / (q + 1.0);
  const int m = f.core_radius();
  const int r = f.radius();

  Buffers out;
  out.radius = r - 1;
  out.core_radius = std::min(m, r - 1);
  const int explicit_depth = out.core_radius;

  std::vector<std::int64_t> offset(static_cast<std::size_t>(m + 2), 0);
  for (int n = 1; n <= m + 1; ++n) offset[static_cast<std::size_t>(n)] = ball_size(n - 1, params);

  const auto in = f.core_values();
  out.core.resize(static_cast<std::size_t>(ball_size(explicit_depth, params)));

  for (int n = 0; n <= explicit_depth; ++n) {
    const std::int64_t count = sphere_size(n, params);
    const std::int64_t base = offset[static_cast<std::size_t>(n)];
    for (std::int64_t rank = 0; rank < count; ++rank) {
      cplx neighbours = 0.0;
      if (n == 1) {
        neighbours += in[0];
      } else if (n >= 2) {
        neighbours += in[static_cast<std::size_t>(offset[static_cast<std::size_t>(n - 1)] + rank / q)];
      }
      if (n < m) {
        const int children = (n == 0) ? q + 1 : q;
        const std::int64_t first = offset[static_cast<std::size_t>(n + 1)] + (n == 0 ? 0 : rank * q);
        for (int c = 0; c < children; ++c) neighbours += in[static_cast<std::size_t>(first + c)];
      } else {
        // n == m < r: all children lie in the first level of this vertex's class.
        const double children = (n == 0) ? q + 1.0 : static_cast<double>(q);
        neighbours += children * f.tail(rank)[0];
      }
      const auto idx = static_cast<std::size_t>(base + rank);
      out.core[idx] = in[idx] - inv_deg * neighbours;
    }
  }

  if (out.core_radius == m) {
    const int len = out.radius - m;
    const auto classes = f.class_count();
    const auto core_first = offset[static_cast<std::size_t>(m)];
    out.tails.resize(static_cast<std::size_t>(classes * len));
    for (std::int64_t cls = 0; cls < classes; ++cls) {
      const auto t = f.tail(cls);
      cplx* dst = out.tails.data() + cls * len;
      for (int j = 1; j <= len; ++j) {
        const cplx parent = (j == 1) ? in[static_cast<std::size_t>(core_first + cls)]
                                     : t[static_cast<std::size_t>(j - 2)];
        const cplx child = t[static_cast<std::size_t>(j)];
        dst[j - 1] = t[static_cast<std::size_t>(j - 1)] - inv_deg * (parent + static_cast<double>(q) * child);
      }
    }
  }
  return out;
}

TreeFunction to_function(const TreeParams& params, Buffers&& b) {
  return TreeFunction(params, b.core_radius, b.radius, std::move(b.core), std::move(b.tails));
}

// b += c * g on the validity ball of b.
void add_scaled(Buffers& b, const TreeFunction& g, cplx c) {
  if (c == cplx(0.0)) return;
  const TreeFunction* src = &g;
  TreeFunction aligned = g;
  if (g.core_radius() != b.core_radius) {
    aligned = g.restricted(b.radius).with_core_radius(b.core_radius);
    src = &aligned;
  }
  const auto core = src->core_values();
  for (std::size_t i = 0; i < b.core.size(); ++i) b.core[i] += c * core[i];
  const int len = b.radius - b.core_radius;
  for (std::int64_t cls = 0; cls < src->class_count(); ++cls) {
    const auto t = src->tail(cls);
    cplx* dst = b.tails.data() + cls * len;
    for (int j = 0; j < len; ++j) dst[j] += c * t[static_cast<std::size_t>(j)];
  }
}

// Horner evaluation of sum_k c_k L^k g over all given coefficients.
TreeFunction apply_polynomial(std::span<const cplx> c, const TreeFunction& g) {
  const int degree = static_cast<int>(c.size()) - 1;
  if (g.radius() < degree) {
    throw Error(ErrorKind::RadiusExhausted, "series of degree " + std::to_string(degree) +
                                                " needs validity radius >= degree, have " +
                                                std::to_string(g.radius()));
  }
  TreeFunction h = g.scaled(c[static_cast<std::size_t>(degree)]);
  for (int k = degree - 1; k >= 0; --k) {
    Buffers b = laplacian_buffers(h);
    add_scaled(b, g, c[static_cast<std::size_t>(k)]);
    h = to_function(g.params(), std::move(b));
  }
  return h;
}

// Number of terms K after which sum_{k>K} weights[k] <= tol; weights.size() if never.
int terms_for_tolerance(const std::vector<double>& weights, double tol) {
  double suffix = 0.0;
  std::vector<double> tail(weights.size(), 0.0);
  for (std::size_t k = weights.size(); k-- > 0;) {
    tail[k] = suffix;
    suffix += weights[k];
  }
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (tail[k] <= tol) return static_cast<int>(k);
  }
  return static_cast<int>(weights.size());
}

struct StepSeries {
  int steps = 1;
  std::vector<cplx> coefficients;  // exp(dt (f - c_0)) truncated
};

StepSeries semigroup_step(const Generator& gen, double t, double tol, int max_terms) {
  const auto c = gen.coefficients();
  const double rest_norm = gen.majorant(kLaplacianNormBound) - std::abs(c[0]);
  StepSeries out;
  out.steps = std::max(1, static_cast<int>(std::ceil(t * rest_norm / kSemigroupStepNorm)));
  const double dt = t / out.steps;

  // k e_k = dt sum_{j>=1} j c_j e_{k-j}; the majorant uses |c_j| and bounds the tail.
  const int horizon = max_terms + 400;
  std::vector<cplx> e(static_cast<std::size_t>(horizon + 1), 0.0);
  std::vector<double> major(static_cast<std::size_t>(horizon + 1), 0.0);
  e[0] = 1.0;
  major[0] = 1.0;
  const int degree = static_cast<int>(c.size()) - 1;
  for (int k = 1; k <= horizon; ++k) {
    cplx acc = 0.0;
    double acc_major = 0.0;
    for (int j = 1; j <= std::min(k, degree); ++j) {
      acc += static_cast<double>(j) * c[static_cast<std::size_t>(j)] * e[static_cast<std::size_t>(k - j)];
      acc_major += j * std::abs(c[static_cast<std::size_t>(j)]) * major[static_cast<std::size_t>(k - j)];
    }
    e[static_cast<std::size_t>(k)] = dt * acc / static_cast<double>(k);
    major[static_cast<std::size_t>(k)] = dt * acc_major / k;
  }
  std::vector<double> weights(major.size());
  double power = 1.0;
  for (std::size_t k = 0; k < major.size(); ++k) {
    weights[k] = major[k] * power;
    power *= kLaplacianNormBound;
  }
  const int terms = terms_for_tolerance(weights, tol / out.steps);
  if (terms > max_terms) {
    throw Error(ErrorKind::NoConvergence, "semigroup series needs more than " + std::to_string(max_terms) +
                                              " terms per step for tolerance " + std::to_string(tol));
  }
  out.coefficients.assign(e.begin(), e.begin() + terms + 1);
  return out;
}

void require_tolerance(double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
}

}  // namespace

Generator::Generator(bool affine, std::vector<cplx> coefficients)
    : affine_(affine), coefficients_(std::move(coefficients)) {}

Generator Generator::affine(cplx a, cplx b) { return Generator(true, {b, a}); }

Generator Generator::series(std::vector<cplx> coefficients) {
  if (coefficients.empty()) throw Error(ErrorKind::InvalidArgument, "series generator needs coefficients");
  return Generator(false, std::move(coefficients));
}

cplx Generator::operator()(cplx w) const {
  cplx acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * w + *it;
  return acc;
}

double Generator::majorant(double r) const {
  double acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

TreeFunction apply_laplacian(const TreeFunction& f) { return to_function(f.params(), laplacian_buffers(f)); }

RadialSequence apply_averaging_radial(const RadialSequence& r) {
  if (r.size() < 2) throw Error(ErrorKind::RadiusExhausted, "averaging needs at least two radial entries");
  const double q = r.params().q();
  const auto in = r.entries();
  std::vector<cplx> out(in.size() - 1);
  out[0] = in[1];
  for (std::size_t n = 1; n < out.size(); ++n) out[n] = (in[n - 1] + q * in[n + 1]) / (q + 1.0);
  return RadialSequence(r.params(), std::move(out));
}

TreeFunction apply_power_series(std::span<const cplx> coefficients, const TreeFunction& g, double tol,
                                int max_terms) {
  require_tolerance(tol);
  if (coefficients.empty()) throw Error(ErrorKind::InvalidArgument, "empty coefficient list");
  if (g.is_zero()) return g;
  std::vector<double> weights(coefficients.size());
  double power = 1.0;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    weights[k] = std::abs(coefficients[k]) * power;
    power *= kLaplacianNormBound;
  }
  const int terms = terms_for_tolerance(weights, tol);
  if (terms > max_terms) {
    throw Error(ErrorKind::NoConvergence, "power series tail still above tolerance after " +
                                              std::to_string(max_terms) + " terms");
  }
  return apply_polynomial(coefficients.first(static_cast<std::size_t>(terms) + 1), g);
}

TreeFunction analytic_apply(const Generator& f, const TreeFunction& g, double tol, int max_terms) {
  return apply_power_series(f.coefficients(), g, tol, max_terms);
}

int semigroup_radius_cost(const Generator& gen, double t, double tol, int max_terms) {
  if (t == 0.0) return 0;
  const auto step = semigroup_step(gen, t, tol, max_terms);
  return step.steps * (static_cast<int>(step.coefficients.size()) - 1);
}

TreeFunction semigroup_apply(const Generator& gen, double t, const TreeFunction& g, double tol,
                             int max_terms) {
  require_tolerance(tol);
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "semigroup time must be >= 0");
  if (t == 0.0 || g.is_zero()) return g;
  const auto step = semigroup_step(gen, t, tol, max_terms);
  const int cost = step.steps * (static_cast<int>(step.coefficients.size()) - 1);
  if (g.radius() < cost) {
    throw Error(ErrorKind::RadiusExhausted, "semigroup at t = " + std::to_string(t) + " consumes radius " +
                                                std::to_string(cost) + ", input has " +
                                                std::to_string(g.radius()));
  }
  TreeFunction h = g;
  for (int s = 0; s < step.steps; ++s) h = apply_polynomial(step.coefficients, h);
  return h.scaled(std::exp(t * gen.coefficients()[0]));
}

HeatKernel heat_kernel(cplx xi, int max_radius, double tol, int max_terms, const TreeParams& params) {
  require_tolerance(tol);
  if (max_radius < 0) throw Error(ErrorKind::InvalidArgument, "heat kernel radius must be >= 0");
  // |h_xi(d) - partial sum| <= e^{-Re xi} sum_{k>K} |xi|^k / k!, since mu^{*k} <= 1 pointwise.
  const double scale = std::exp(-xi.real());
  std::vector<double> weights;
  double term = 1.0;
  for (int k = 0; k <= max_terms + 400; ++k) {
    weights.push_back(scale * term);
    term *= std::abs(xi) / (k + 1);
  }
  const int terms = terms_for_tolerance(weights, tol);
  if (terms > max_terms) {
    throw Error(ErrorKind::NoConvergence, "heat kernel series needs more than " + std::to_string(max_terms) +
                                              " terms");
  }
  double tail = 0.0;
  for (std::size_t k = static_cast<std::size_t>(terms) + 1; k < weights.size(); ++k) tail += weights[k];

  std::vector<cplx> delta(static_cast<std::size_t>(max_radius + terms + 1), 0.0);
  delta[0] = 1.0;
  RadialSequence power(params, std::move(delta));  // mu_1^{*k}
  std::vector<cplx> h(static_cast<std::size_t>(max_radius + 1), 0.0);
  cplx coeff = 1.0;  // xi^k / k!
  for (int k = 0; k <= terms; ++k) {
    const auto p = power.entries();
    for (int d = 0; d <= max_radius; ++d) h[static_cast<std::size_t>(d)] += coeff * p[static_cast<std::size_t>(d)];
    if (k < terms) {
      power = apply_averaging_radial(power);
      coeff *= xi / static_cast<double>(k + 1);
    }
  }
  const cplx prefactor = std::exp(-xi);
  for (auto& v : h) v *= prefactor;
  return HeatKernel{xi, RadialSequence(params, std::move(h)), terms + 1, tail};
}

TreeFunction convolve_radial(const TreeFunction& f, const RadialSequence& k, int output_radius) {
  if (output_radius < 0) throw Error(ErrorKind::InvalidArgument, "output radius must be >= 0");
  const auto& params = f.params();
  // Expand tails only when they carry mass.
  const auto tails = f.tail_values();
  const bool tails_zero = std::all_of(tails.begin(), tails.end(), [](cplx c) { return c == cplx(0.0); });
  const TreeFunction source = tails_zero ? f.restricted(f.core_radius()) : f.with_core_radius(f.radius());
  const auto support = source.nonzero_entries(source.radius());
  int support_radius = 0;
  for (const auto& [y, v] : support) support_radius = std::max(support_radius, y.depth());
  if (output_radius + support_radius > k.max_index()) {
    throw Error(ErrorKind::KernelTooShort, "kernel of length " + std::to_string(k.size()) +
                                               " does not cover distance " +
                                               std::to_string(output_radius + support_radius));
  }
  const auto kernel = k.entries();
  return TreeFunction::sample(params, output_radius, output_radius, [&](const Vertex& x) {
    cplx acc = 0.0;
    for (const auto& [y, v] : support) acc += v * kernel[static_cast<std::size_t>(distance(x, y))];
    return acc;
  });
}

cplx bessel_I(int d, cplx z) {
  d = std::abs(d);
  const cplx half = z / 2.0;
  cplx term = 1.0;
  for (int k = 1; k <= d; ++k) term *= half / static_cast<double>(k);
  const cplx half_sq = half * half;
  cplx sum = term;
  const double peak = std::abs(half);
  for (int m = 1; m < 100000; ++m) {
    term *= half_sq / (static_cast<double>(m) * static_cast<double>(m + d));
    sum += term;
    if (m > peak && std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

cplx lattice_heat_kernel(cplx w, int d) { return std::exp(-w) * bessel_I(d, w); }

double norm_lower_bound(cplx xi, double p, const TreeParams& params) {
  return std::exp(xi.real() + phi_p_threshold(xi, p, params));
}

}  // namespace treedyn
