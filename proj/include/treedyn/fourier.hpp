#pragma once

// Poisson kernel and transform, the Helgason-Fourier transform of finitely
// supported functions, the duality pairing and the Plancherel check.

#include <utility>

#include "treedyn/spectral.hpp"
#include "treedyn/tree.hpp"

namespace treedyn {

struct FourierSlice {
  SpectralPoint z;
  ConeFunction F;
};

struct PlancherelResult {
  double value;
  int quad_points;
};

/// q^{h_cone(x)}, exact. Throws ConeTooShallow unless cone.depth() > |x|.
Rational poisson_kernel(const Vertex& x, const BoundaryCone& cone, const TreeParams& params);

/// (P_z F)(x) = ∫ p(x, ω)^{1/2+iz} F(ω) dν(ω). The integral is evaluated in
/// closed form over each cone, so x may lie at any depth.
cplx poisson_transform(const SpectralPoint& z, const ConeFunction& F, const Vertex& x);

/// P_z F on B(o, radius), with core radius F.depth().
TreeFunction poisson_transform_function(const SpectralPoint& z, const ConeFunction& F, int radius);

/// f~(z, ω) = Σ_x f(x) p(x, ω)^{1/2+iz}, at cone depth max(1, support radius + 1).
FourierSlice hf_transform(const TreeFunction& f, const SpectralPoint& z);

/// (∫ f~(z, ω) F(ω) dν(ω), Σ_x f(x) (P_z F)(x)).
std::pair<cplx, cplx> duality_check(const TreeFunction& f, const ConeFunction& F, const SpectralPoint& z);

/// ∫∫ |f~(s, ω)|^2 dν(ω) dμ(s) by composite Gauss-Legendre in s, doubling the
/// node count from quad_points until successive levels agree to tol.
PlancherelResult plancherel_norm(const TreeFunction& f, int quad_points = 64, double tol = 1e-9);

}  // namespace treedyn
