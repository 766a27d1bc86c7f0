#pragma once

// The Laplacian and its functional calculus on finite balls, the semigroups
// e^{t f(L)}, the tree heat kernel h_xi and the lattice/Bessel kernels.

#include <span>
#include <vector>

#include "treedyn/tree.hpp"

namespace treedyn {

/// Operator-norm bound for L on every L^p, used in all series tail bounds.
inline constexpr double kLaplacianNormBound = 2.0;

/// Generator f of the semigroup e^{t f(L)}: either a*w + b or a polynomial
/// sum_k c_k w^k.
class Generator {
 public:
  static Generator affine(cplx a, cplx b);
  static Generator series(std::vector<cplx> coefficients);

  bool is_affine() const noexcept { return affine_; }
  /// Affine slope and offset (a, b); for a series, c_1 and c_0.
  cplx a() const noexcept { return coefficients_.size() > 1 ? coefficients_[1] : cplx(0.0); }
  cplx b() const noexcept { return coefficients_[0]; }
  /// Polynomial coefficients c_0..c_M of f.
  std::span<const cplx> coefficients() const noexcept { return coefficients_; }

  cplx operator()(cplx w) const;
  /// sum_k |c_k| r^k, a bound for |f| on the disc of radius r.
  double majorant(double r) const;

 private:
  Generator(bool affine, std::vector<cplx> coefficients);

  bool affine_;
  std::vector<cplx> coefficients_;
};

struct HeatKernel {
  cplx xi;
  /// h_xi at distances 0..max_radius.
  RadialSequence kernel;
  int terms_used;
  double tail_bound;
};

/// (Lf)(x) = f(x) - (1/(q+1)) sum_{y ~ x} f(y); the result is valid on radius - 1.
TreeFunction apply_laplacian(const TreeFunction& f);

/// Nearest-neighbour averaging on radial profiles; output is one entry shorter.
RadialSequence apply_averaging_radial(const RadialSequence& r);

/// sum_k c_k L^k g for a polynomial coefficient list. Terms stop once
/// sum_{j>k} |c_j| 2^j <= tol, so the pointwise error is at most tol * sup|g|.
TreeFunction apply_power_series(std::span<const cplx> coefficients, const TreeFunction& g, double tol,
                                int max_terms);

/// f(L) g for a polynomial generator.
TreeFunction analytic_apply(const Generator& f, const TreeFunction& g, double tol, int max_terms);

/// e^{t f(L)} g. The time is split as e^{t f} = (e^{(t/m) f})^m so that each
/// factor's series has norm at most kSemigroupStepNorm; each factor is the
/// Taylor series of exp((t/m)(f - c_0)) in L, and e^{t c_0} is applied as a scalar.
TreeFunction semigroup_apply(const Generator& gen, double t, const TreeFunction& g, double tol,
                             int max_terms);

inline constexpr double kSemigroupStepNorm = 4.0;

/// Validity radius consumed by semigroup_apply for these arguments.
int semigroup_radius_cost(const Generator& gen, double t, double tol, int max_terms);

HeatKernel heat_kernel(cplx xi, int max_radius, double tol, int max_terms, const TreeParams& params);

/// (f * k)(x) = sum_y f(y) k(d(x, y)) on B(o, output_radius). f is treated as
/// zero outside its validity ball.
TreeFunction convolve_radial(const TreeFunction& f, const RadialSequence& k, int output_radius);

/// Modified Bessel function of the first kind of integer order.
cplx bessel_I(int d, cplx z);

/// Heat kernel on the integers: e^{-w} I_d(w).
cplx lattice_heat_kernel(cplx w, int d);

/// exp(Re xi + Phi_p(xi)) <= ||e^{xi L}||_{p->p}, for 2 < p < inf.
double norm_lower_bound(cplx xi, double p, const TreeParams& params);

}  // namespace treedyn
