#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "treedyn/fourier.hpp"
#include "treedyn/operators.hpp"

using namespace treedyn;
using support::err;

namespace {

Vertex word(std::vector<int> w, const TreeParams& params) { return parse_vertex(w, params); }

double to_double(const Rational& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

// Sum over every cone one level below x, where the kernel is constant.
cplx brute_poisson(const SpectralPoint& z, const ConeFunction& F, const Vertex& x) {
  const auto& params = F.params();
  const int depth = std::max(F.depth(), x.depth() + 1);
  const auto fine = refine_cone_function(F, depth);
  const auto anchors = enumerate_sphere(depth, params);
  const cplx s(0.5, 0.0);
  cplx acc = 0.0;
  for (std::size_t r = 0; r < anchors.size(); ++r) {
    const BoundaryCone cone(anchors[r]);
    const double h = horocycle_height(x, cone);
    acc += std::exp((s + cplx(0.0, 1.0) * z.z()) * h * params.log_q()) * fine.at(static_cast<std::int64_t>(r));
  }
  return acc * fine.cell_measure();
}

ConeFunction random_cone(const TreeParams& params, int depth, std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return ConeFunction::sample(params, depth, [&](const Vertex&) { return cplx(u(g), u(g)); });
}

}  // namespace

TEST_CASE("Poisson kernel") {
  const TreeParams params(3);
  CHECK(poisson_kernel(Vertex::root(), BoundaryCone(word({2}, params)), params) == Rational(1));
  CHECK(poisson_kernel(word({2}, params), BoundaryCone(word({2, 0}, params)), params) == Rational(3));
  CHECK(poisson_kernel(word({1, 1}, params), BoundaryCone(word({2, 0, 0}, params)), params) == Rational(1, 9));
  try {
    poisson_kernel(word({1, 1}, params), BoundaryCone(word({1, 1}, params)), params);
    FAIL("expected ConeTooShallow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConeTooShallow);
  }
  const TreeParams q2(2);
  std::vector<int> deep(70, 0);
  Vertex far = word(deep, q2);
  CHECK_THROWS_AS(poisson_kernel(far, BoundaryCone(far.child(0)), q2), Error);
}

TEST_CASE("transform of the constant function is the spherical function") {
  for (const int q : {2, 3}) {
    const TreeParams params(q);
    const SpectralPoint z(cplx(0.35, 0.12), params);
    const auto one = ConeFunction::constant(params, 2, 1.0);
    for (const auto& x : enumerate_ball(4, params)) {
      CHECK(err(poisson_transform(z, one, x), phi(z, x.depth(), params)) < 1e-13);
    }
    std::vector<int> w(40, 1);
    w[0] = 0;
    CHECK(err(poisson_transform(z, one, word(w, params)), phi(z, 40, params)) < 1e-13);
  }
}

TEST_CASE("transform matches the brute-force cone sum") {
  auto g = support::rng(30);
  for (const int q : {2, 3}) {
    const TreeParams params(q);
    for (const cplx zc : {cplx(0.2, 0.0), cplx(-0.9, 0.3), cplx(1.1, -0.25)}) {
      const SpectralPoint z(zc, params);
      const auto F = random_cone(params, 2, g);
      for (const auto& x : enumerate_ball(5, params)) {
        INFO("q=" << q << " z=" << zc << " |x|=" << x.depth());
        CHECK(err(poisson_transform(z, F, x), brute_poisson(z, F, x)) < 1e-13);
      }
    }
  }
}

TEST_CASE("Poisson transforms are eigenfunctions") {
  const TreeParams params(2);
  auto g = support::rng(31);
  const SpectralPoint z(cplx(0.6, 0.2), params);
  const auto F = random_cone(params, 3, g);
  const auto u = poisson_transform_function(z, F, 9);
  CHECK(u.core_radius() == 3);
  const auto lu = apply_laplacian(u);
  const cplx ev = gamma(z, params);
  for (const auto& x : enumerate_ball(8, params)) CHECK(err(lu.value(x), ev * u.value(x)) < 1e-13);
  // The tails agree with pointwise evaluation.
  for (const auto& x : enumerate_ball(9, params)) CHECK(err(u.value(x), poisson_transform(z, F, x)) < 1e-13);
  const auto shallow = poisson_transform_function(z, F, 2);
  CHECK(shallow.radius() == 2);
  CHECK_THROWS_AS(poisson_transform_function(z, F, -1), Error);
}

TEST_CASE("radial average of a Poisson transform") {
  const TreeParams params(3);
  auto g = support::rng(32);
  const SpectralPoint z(cplx(0.4, -0.1), params);
  const auto F = random_cone(params, 2, g);
  const auto avg = radialize(poisson_transform_function(z, F, 6));
  const cplx mean = integrate_boundary(F);
  for (int n = 0; n <= 6; ++n) CHECK(err(avg[static_cast<std::size_t>(n)], mean * phi(z, n, params)) < 1e-13);
}

TEST_CASE("Helgason-Fourier transform") {
  const TreeParams params(2);
  const SpectralPoint z(cplx(0.3, 0.05), params);
  const auto root = hf_transform(TreeFunction::delta(params, Vertex::root(), 2), z);
  CHECK(root.F.depth() == 1);
  for (const cplx v : root.F.values()) CHECK(v == cplx(1.0));

  const Vertex x = word({1, 0}, params);
  const auto slice = hf_transform(TreeFunction::delta(params, x, 2), z);
  CHECK(slice.F.depth() == 3);
  const auto anchors = enumerate_sphere(3, params);
  for (std::size_t r = 0; r < anchors.size(); ++r) {
    const double p = to_double(poisson_kernel(x, BoundaryCone(anchors[r]), params));
    const cplx expected = std::exp((0.5 + cplx(0.0, 1.0) * z.z()) * std::log(p));
    CHECK(err(slice.F.at(static_cast<std::int64_t>(r)), expected) < 1e-14);
  }

  auto g = support::rng(33);
  const auto f = support::random_function(params, 2, g);
  const auto h = support::random_function(params, 2, g);
  const auto sum = hf_transform(f + h.scaled(cplx(0.0, 2.0)), z).F;
  const auto a = hf_transform(f, z).F, b = hf_transform(h, z).F;
  for (std::int64_t r = 0; r < sum.size(); ++r) CHECK(err(sum.at(r), a.at(r) + cplx(0.0, 2.0) * b.at(r)) < 1e-14);

  const auto shifted = hf_transform(f, SpectralPoint(z.z() + params.tau(), params)).F;
  for (std::int64_t r = 0; r < a.size(); ++r) CHECK(err(shifted.at(r), a.at(r)) < 1e-13);

  const auto real_f = support::random_function(params, 2, g, true);
  const auto plus = hf_transform(real_f, SpectralPoint(0.7, params)).F;
  const auto minus = hf_transform(real_f, SpectralPoint(-0.7, params)).F;
  for (std::int64_t r = 0; r < plus.size(); ++r) CHECK(err(minus.at(r), std::conj(plus.at(r))) < 1e-14);
}

TEST_CASE("duality between the two transforms") {
  auto g = support::rng(34);
  for (const int q : {2, 3}) {
    const TreeParams params(q);
    for (const int depth : {1, 4}) {
      const auto f = support::random_function(params, 2, g);
      const auto F = random_cone(params, depth, g);
      const auto [lhs, rhs] = duality_check(f, F, SpectralPoint(cplx(0.45, 0.1), params));
      CHECK(err(lhs, rhs) < 1e-13 * std::max(1.0, std::abs(rhs)));
    }
  }
  CHECK_THROWS_AS(duality_check(TreeFunction::zero(TreeParams(2), 1), ConeFunction::constant(TreeParams(3), 1, 1.0),
                                SpectralPoint(0.1, TreeParams(2))),
                  Error);
}

TEST_CASE("Plancherel identity") {
  auto g = support::rng(35);
  for (const int q : {2, 3, 5}) {
    const TreeParams params(q);
    const auto f = support::random_function(params, q == 5 ? 1 : 2, g);
    const double direct = std::pow(f.lp_norm(2.0), 2);
    const auto res = plancherel_norm(f);
    CHECK(res.value == doctest::Approx(direct).epsilon(1e-9));
    CHECK(res.quad_points >= 64);
  }
  const TreeParams params(2);
  CHECK(plancherel_norm(TreeFunction::delta(params, Vertex::root(), 0)).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(plancherel_norm(TreeFunction::zero(params, 2)).value == 0.0);
  CHECK_THROWS_AS(plancherel_norm(TreeFunction::delta(params, Vertex::root(), 0), 8), Error);
  CHECK_THROWS_AS(plancherel_norm(TreeFunction::delta(params, Vertex::root(), 0), 64, 0.0), Error);
  // Non-finite input never settles.
  try {
    const std::vector<std::pair<Vertex, cplx>> bad{{Vertex::root(), cplx(std::nan(""), 0.0)}};
    plancherel_norm(TreeFunction::from_entries(params, 0, bad));
    FAIL("expected QuadratureNotConverged");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::QuadratureNotConverged);
  }
}
