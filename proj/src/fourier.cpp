#include "treedyn/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

namespace treedyn {

namespace {

constexpr cplx kI{0.0, 1.0};

// Sums of F over the cones below every vertex of B(o, F.depth()), by level.
class ConeSums {
 public:
  explicit ConeSums(const ConeFunction& F) : q_(F.params().q()) {
    const int depth = F.depth();
    levels_.resize(static_cast<std::size_t>(depth + 1));
    levels_[static_cast<std::size_t>(depth)].assign(F.values().begin(), F.values().end());
    for (int k = depth - 1; k >= 0; --k) {
      auto& level = levels_[static_cast<std::size_t>(k)];
      level.assign(static_cast<std::size_t>(sphere_size(k, F.params())), 0.0);
      const auto& below = levels_[static_cast<std::size_t>(k + 1)];
      for (std::size_t r = 0; r < below.size(); ++r) level[k == 0 ? 0 : r / static_cast<std::size_t>(q_)] += below[r];
    }
  }

  cplx at(int level, std::int64_t rank) const {
    return levels_[static_cast<std::size_t>(level)][static_cast<std::size_t>(rank)];
  }

 private:
  int q_;
  std::vector<std::vector<cplx>> levels_;
};

// Ranks of the ancestors x_0 .. x_m of x.
std::vector<std::int64_t> ancestor_ranks(const Vertex& x, int m, const TreeParams& params) {
  std::vector<std::int64_t> ranks(static_cast<std::size_t>(m + 1), 0);
  for (int k = 1; k <= m; ++k) ranks[static_cast<std::size_t>(k)] = sphere_rank(x.prefix(k), params);
  return ranks;
}

// (1/N_D) Σ_{k<D} (G(x_k) - G(x_{k+1})) q^{s(2k-D)} for x on the depth-D sphere:
// the contribution of all cones other than the one through x.
cplx off_cone_part(const ConeSums& G, const std::vector<std::int64_t>& ranks, int depth, cplx s,
                   double nu, const TreeParams& params) {
  cplx acc = 0.0;
  for (int k = 0; k < depth; ++k) {
    const cplx diff = G.at(k, ranks[static_cast<std::size_t>(k)]) - G.at(k + 1, ranks[static_cast<std::size_t>(k + 1)]);
    acc += diff * qpow(s * static_cast<double>(2 * k - depth), params);
  }
  return nu * acc;
}

// U_j = q^{-sD} Σ over the cone containing x = u·w, |w| = j, of p^s dν / ν_D.
std::vector<cplx> inner_cone_profile(cplx s, int len, const TreeParams& params) {
  std::vector<cplx> u(static_cast<std::size_t>(len + 1));
  u[0] = 1.0;
  const cplx q_minus_s = qpow(-s, params);
  for (int j = 0; j < len; ++j) {
    const double jj = j;
    u[static_cast<std::size_t>(j + 1)] = q_minus_s * u[static_cast<std::size_t>(j)] +
                                          qpow((s - 1.0) * (jj + 1.0), params) -
                                          qpow(s * (jj - 1.0) - (jj + 1.0), params);
  }
  return u;
}

cplx transform_at(const ConeSums& G, const ConeFunction& F, cplx s, const Vertex& x) {
  const auto& params = F.params();
  const int depth = F.depth();
  const int n = x.depth();
  const int m = std::min(n, depth);
  const double nu = F.cell_measure();
  const auto ranks = ancestor_ranks(x, m, params);
  cplx acc = 0.0;
  for (int k = 0; k < m; ++k) {
    const cplx diff = G.at(k, ranks[static_cast<std::size_t>(k)]) - G.at(k + 1, ranks[static_cast<std::size_t>(k + 1)]);
    acc += diff * qpow(s * static_cast<double>(2 * k - n), params);
  }
  const cplx last = G.at(m, ranks[static_cast<std::size_t>(m)]);
  if (n <= depth) {
    acc += last * qpow(s * static_cast<double>(n), params);
  } else {
    const auto u = inner_cone_profile(s, n - depth, params);
    acc += last * qpow(s * static_cast<double>(depth), params) * u.back();
  }
  return nu * acc;
}

int support_radius(const std::vector<std::pair<Vertex, cplx>>& entries) {
  int r = 0;
  for (const auto& [x, v] : entries) r = std::max(r, x.depth());
  return r;
}

// Horocycle heights of each support point with respect to each cone of the slice depth.
struct HeightTable {
  int depth = 1;
  int max_height = 0;
  std::vector<cplx> weights;  // f(x) per entry
  std::vector<int> heights;   // [anchor * entries + entry], shifted by max_height
  std::size_t entry_count = 0;
  std::size_t anchor_count = 0;
};

HeightTable height_table(const TreeFunction& f) {
  const auto entries = f.nonzero_entries(f.radius());
  HeightTable t;
  t.max_height = support_radius(entries);
  t.depth = std::max(1, t.max_height + 1);
  t.entry_count = entries.size();
  for (const auto& e : entries) t.weights.push_back(e.second);
  const auto anchors = enumerate_sphere(t.depth, f.params());
  t.anchor_count = anchors.size();
  t.heights.reserve(t.anchor_count * t.entry_count);
  for (const auto& u : anchors) {
    const BoundaryCone cone(u);
    for (const auto& e : entries) t.heights.push_back(horocycle_height(e.first, cone) + t.max_height);
  }
  return t;
}

std::vector<cplx> slice_values(const HeightTable& t, cplx s, const TreeParams& params) {
  std::vector<cplx> powers(static_cast<std::size_t>(2 * t.max_height + 1));
  for (int h = -t.max_height; h <= t.max_height; ++h) {
    powers[static_cast<std::size_t>(h + t.max_height)] = qpow(s * static_cast<double>(h), params);
  }
  std::vector<cplx> values(t.anchor_count, 0.0);
  for (std::size_t a = 0; a < t.anchor_count; ++a) {
    cplx acc = 0.0;
    const int* row = t.heights.data() + a * t.entry_count;
    for (std::size_t e = 0; e < t.entry_count; ++e) acc += t.weights[e] * powers[static_cast<std::size_t>(row[e])];
    values[a] = acc;
  }
  return values;
}

}  // namespace

Rational poisson_kernel(const Vertex& x, const BoundaryCone& cone, const TreeParams& params) {
  const int h = horocycle_height(x, cone);
  if (std::abs(h) * std::log2(static_cast<double>(params.q())) > 62.0) {
    throw Error(ErrorKind::InvalidArgument, "q^h does not fit in 64-bit rational arithmetic");
  }
  std::int64_t power = 1;
  for (int k = 0; k < std::abs(h); ++k) power *= params.q();
  return h >= 0 ? Rational(power) : Rational(1, power);
}

cplx poisson_transform(const SpectralPoint& z, const ConeFunction& F, const Vertex& x) {
  const ConeSums G(F);
  return transform_at(G, F, 0.5 + kI * z.z(), x);
}

TreeFunction poisson_transform_function(const SpectralPoint& z, const ConeFunction& F, int radius) {
  if (radius < 0) throw Error(ErrorKind::InvalidArgument, "radius must be >= 0");
  const auto& params = F.params();
  const ConeSums G(F);
  const cplx s = 0.5 + kI * z.z();
  const int depth = F.depth();
  if (radius <= depth) {
    return TreeFunction::sample(params, radius, radius, [&](const Vertex& x) { return transform_at(G, F, s, x); });
  }
  const TreeFunction core =
      TreeFunction::sample(params, depth, depth, [&](const Vertex& x) { return transform_at(G, F, s, x); });
  const int len = radius - depth;
  const auto u = inner_cone_profile(s, len, params);
  const double nu = F.cell_measure();
  const cplx cone_scale = qpow(s * static_cast<double>(depth), params);
  std::vector<cplx> decay(static_cast<std::size_t>(len + 1));
  for (int j = 0; j <= len; ++j) decay[static_cast<std::size_t>(j)] = qpow(-s * static_cast<double>(j), params);

  std::vector<cplx> tails;
  tails.reserve(static_cast<std::size_t>(F.size() * len));
  const auto anchors = enumerate_sphere(depth, params);
  for (std::int64_t r = 0; r < F.size(); ++r) {
    const auto ranks = ancestor_ranks(anchors[static_cast<std::size_t>(r)], depth, params);
    const cplx off = off_cone_part(G, ranks, depth, s, nu, params);
    const cplx on = nu * F.at(r) * cone_scale;
    for (int j = 1; j <= len; ++j) {
      tails.push_back(decay[static_cast<std::size_t>(j)] * off + on * u[static_cast<std::size_t>(j)]);
    }
  }
  return TreeFunction(params, depth, radius, std::vector<cplx>(core.core_values().begin(), core.core_values().end()),
                      std::move(tails));
}

FourierSlice hf_transform(const TreeFunction& f, const SpectralPoint& z) {
  const auto table = height_table(f);
  auto values = slice_values(table, 0.5 + kI * z.z(), f.params());
  return FourierSlice{z, ConeFunction(f.params(), table.depth, std::move(values))};
}

std::pair<cplx, cplx> duality_check(const TreeFunction& f, const ConeFunction& F, const SpectralPoint& z) {
  if (!(f.params() == F.params())) throw Error(ErrorKind::InvalidArgument, "tree parameters differ");
  const auto slice = hf_transform(f, z);
  const int depth = std::max(slice.F.depth(), F.depth());
  const auto a = refine_cone_function(slice.F, depth);
  const auto b = refine_cone_function(F, depth);
  cplx lhs = 0.0;
  for (std::int64_t r = 0; r < a.size(); ++r) lhs += a.at(r) * b.at(r);
  lhs *= a.cell_measure();

  const ConeSums G(F);
  const cplx s = 0.5 + kI * z.z();
  cplx rhs = 0.0;
  for (const auto& [x, v] : f.nonzero_entries(f.radius())) rhs += v * transform_at(G, F, s, x);
  return {lhs, rhs};
}

PlancherelResult plancherel_norm(const TreeFunction& f, int quad_points, double tol) {
  if (quad_points < 16) throw Error(ErrorKind::InvalidArgument, "plancherel_norm needs quad_points >= 16");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  const auto& params = f.params();
  if (f.is_zero()) return {0.0, quad_points};
  const auto table = height_table(f);
  const double nu = 1.0 / static_cast<double>(table.anchor_count);

  auto integrand = [&](double s) {
    double inner = 0.0;
    for (const cplx v : slice_values(table, cplx(0.5, s), params)) inner += std::norm(v);
    return inner * nu * plancherel_density(s, params);
  };

  constexpr int kPanelPoints = 8;
  const double lo = -params.tau() / 2.0;
  const double width = params.tau();
  auto composite = [&](int panels) {
    double sum = 0.0;
    for (int k = 0; k < panels; ++k) {
      const double a = lo + width * k / panels;
      const double b = lo + width * (k + 1) / panels;
      sum += boost::math::quadrature::gauss<double, kPanelPoints>::integrate(integrand, a, b);
    }
    return sum;
  };

  int panels = std::max(2, (quad_points + kPanelPoints - 1) / kPanelPoints);
  double previous = composite(panels);
  for (int level = 0; level < 12; ++level) {
    panels *= 2;
    const double current = composite(panels);
    if (std::abs(current - previous) <= tol * std::max(1.0, std::abs(current))) {
      return {current, panels * kPanelPoints};
    }
    previous = current;
  }
  throw Error(ErrorKind::QuadratureNotConverged,
              "Plancherel quadrature did not settle to " + std::to_string(tol) + " after " +
                  std::to_string(panels * kPanelPoints) + " nodes");
}

}  // namespace treedyn
