#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "support.hpp"
#include "treedyn/tree.hpp"

using namespace treedyn;

namespace {

Vertex word(std::initializer_list<int> symbols, const TreeParams& params) {
  const std::vector<int> w(symbols);
  return parse_vertex(w, params);
}

}  // namespace

TEST_CASE("params") {
  CHECK_THROWS_AS(TreeParams(1), Error);
  const TreeParams p(2);
  CHECK(p.tau() == doctest::Approx(2.0 * 3.141592653589793 / std::log(2.0)));
}

TEST_CASE("vertex parsing enforces the symbol ranges") {
  const TreeParams params(2);
  CHECK(word({2, 1, 0}, params).depth() == 3);
  try {
    word({3}, params);
    FAIL("first symbol q+1 accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SymbolOutOfRange);
  }
  try {
    word({0, 2}, params);
    FAIL("later symbol q accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SymbolOutOfRange);
  }
  CHECK_THROWS_AS(word({-1}, params), Error);
}

TEST_CASE("distance is a metric on small balls") {
  for (const int q : {2, 3}) {
    const TreeParams params(q);
    const auto ball = enumerate_ball(q == 2 ? 4 : 3, params);
    for (const auto& x : ball) {
      for (const auto& y : ball) {
        const int dxy = distance(x, y);
        CHECK((dxy == 0) == (x == y));
        CHECK(dxy == distance(y, x));
        for (const auto& z : ball) {
          if (distance(x, z) + distance(z, y) < dxy) FAIL("triangle inequality");
        }
      }
    }
  }
  const TreeParams params(2);
  CHECK(distance(word({1, 0}, params), word({1, 1, 1}, params)) == 3);
  CHECK(distance(word({0}, params), word({2}, params)) == 2);
}

TEST_CASE("sphere and ball sizes") {
  const TreeParams params(3);
  CHECK(sphere_size(0, params) == 1);
  CHECK(sphere_size(1, params) == 4);
  CHECK(sphere_size(3, params) == 36);
  CHECK(ball_size(3, params) == 1 + 4 + 12 + 36);
  CHECK(static_cast<std::int64_t>(enumerate_sphere(3, params).size()) == 36);
}

TEST_CASE("ranks, shortlex order and ball indices agree") {
  const TreeParams params(3);
  const auto ball = enumerate_ball(4, params);
  CHECK(std::is_sorted(ball.begin(), ball.end(), [](const Vertex& a, const Vertex& b) {
    return a.depth() != b.depth() ? a.depth() < b.depth() : a < b;
  }));
  for (std::size_t i = 0; i < ball.size(); ++i) {
    CHECK(ball_index(ball[i], params) == static_cast<std::int64_t>(i));
    CHECK(vertex_at(ball[i].depth(), sphere_rank(ball[i], params), params) == ball[i]);
  }
}

TEST_CASE("cone measure is exact and sums to one") {
  const TreeParams q2(2);
  CHECK(cone_measure(BoundaryCone(word({1}, q2)), q2) == Rational(1, 3));
  CHECK(cone_measure(BoundaryCone(word({1, 0}, q2)), q2) == Rational(1, 6));
  CHECK_THROWS_AS(BoundaryCone(Vertex::root()), Error);
  for (const int q : {2, 3, 5}) {
    const TreeParams params(q);
    Rational total(0);
    for (const auto& u : enumerate_sphere(4, params)) total += cone_measure(BoundaryCone(u), params);
    CHECK(total == Rational(1));
  }
}

TEST_CASE("horocycle height does not depend on the cone depth") {
  const TreeParams params(2);
  CHECK(horocycle_height(Vertex::root(), BoundaryCone(word({0}, params))) == 0);
  CHECK(horocycle_height(word({1}, params), BoundaryCone(word({0, 0, 0}, params))) == -1);
  CHECK(horocycle_height(word({0, 1}, params), BoundaryCone(word({0, 1, 0}, params))) == 2);
  CHECK_THROWS_AS(horocycle_height(word({0, 1}, params), BoundaryCone(word({0, 1}, params))), Error);
  for (const auto& x : enumerate_ball(3, params)) {
    for (const auto& ray_end : enumerate_sphere(7, params)) {
      const int h = horocycle_height(x, BoundaryCone(ray_end.prefix(x.depth() + 1)));
      for (int depth = x.depth() + 2; depth <= x.depth() + 4; ++depth) {
        if (horocycle_height(x, BoundaryCone(ray_end.prefix(depth))) != h) FAIL("height changed with depth");
      }
    }
  }
}

TEST_CASE("Poisson normalization holds exactly") {
  for (const int q : {2, 3}) {
    const TreeParams params(q);
    const int depth = 5;
    for (const auto& x : enumerate_ball(depth - 1, params)) {
      Rational total(0);
      for (const auto& u : enumerate_sphere(depth, params)) {
        const BoundaryCone cone(u);
        const int h = horocycle_height(x, cone);
        Rational power(1);
        for (int k = 0; k < std::abs(h); ++k) power *= q;
        total += (h >= 0 ? power : Rational(1) / power) * cone_measure(cone, params);
      }
      CHECK(total == Rational(1));
    }
  }
}

TEST_CASE("boundary integration and refinement") {
  const TreeParams params(2);
  CHECK(integrate_boundary(ConeFunction::constant(params, 3, cplx(2.0, -1.0))) == cplx(2.0, -1.0));
  const auto ind = ConeFunction::indicator(params, BoundaryCone(word({2, 1}, params)));
  CHECK(integrate_boundary(ind).real() == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  const auto coarse = ConeFunction::sample(params, 1, [](const Vertex& v) { return cplx(v.symbol(0), 1.0); });
  const auto fine = refine_cone_function(coarse, 2);
  CHECK(coarse.size() == 3);
  CHECK(fine.size() == 6);
  CHECK(refine_cone_function(coarse, 1).values().size() == 3);
  CHECK(support::err(integrate_boundary(fine), integrate_boundary(coarse)) < 1e-15);
  CHECK(support::err(integrate_boundary(refine_cone_function(coarse, 6)), integrate_boundary(coarse)) < 1e-14);
  CHECK_THROWS_AS(refine_cone_function(fine, 1), Error);
}

TEST_CASE("radialize") {
  const TreeParams params(3);
  const Vertex x = word({1, 2}, params);
  const auto r = radialize(TreeFunction::delta(params, x, 3));
  CHECK(r[2].real() == doctest::Approx(1.0 / 12.0));
  CHECK(r[0] == cplx(0.0));
  CHECK(r[3] == cplx(0.0));
  const RadialSequence seq(params, {1.0, cplx(2.0, 1.0), -3.0, 0.5});
  const auto back = radialize(TreeFunction::radial_lift(seq));
  for (std::size_t n = 0; n < seq.size(); ++n) CHECK(back[n] == seq[n]);
}

TEST_CASE("quotient storage matches the explicit ball") {
  const TreeParams params(2);
  auto g = support::rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto f = TreeFunction::sample(params, 2, 6, [&](const Vertex&) { return cplx(u(g), u(g)); });
  const auto dense = f.with_core_radius(6);
  CHECK(dense.core_radius() == 6);
  for (const auto& v : enumerate_ball(6, params)) {
    const Vertex rep = v.depth() <= 2 ? v : [&] {
      Vertex w = v.prefix(2);
      for (int j = 2; j < v.depth(); ++j) w = w.child(0);
      return w;
    }();
    CHECK(dense.value(v) == f.value(rep));
  }
  for (const double p : {1.0, 2.0, 3.5}) CHECK(f.lp_norm(p) == doctest::Approx(dense.lp_norm(p)).epsilon(1e-13));
  CHECK(f.sup_norm() == dense.sup_norm());
  CHECK((f - dense).is_zero());
  CHECK((f + f).value(word({1, 0, 1, 1}, params)) == 2.0 * f.value(word({1, 0, 0, 0}, params)));
  CHECK(f.restricted(3).radius() == 3);
  CHECK(f.extended_by_zero(8).value(word({1, 0, 0, 0, 0, 0, 0}, params)) == cplx(0.0));
}

TEST_CASE("explicit construction validates input") {
  const TreeParams params(2);
  const Vertex x = word({1}, params);
  const std::vector<std::pair<Vertex, cplx>> twice{{x, 1.0}, {x, 2.0}};
  CHECK_THROWS_AS(TreeFunction::from_entries(params, 2, twice), Error);
  CHECK_THROWS_AS(TreeFunction::delta(params, word({1, 1, 1}, params), 2), Error);
  const auto d = TreeFunction::delta(params, x, 2);
  CHECK(d.value(x) == cplx(1.0));
  CHECK(d.nonzero_entries(2).size() == 1);
  CHECK(TreeFunction::zero(params, 4).is_zero());
  // Zero tails are never expanded, however deep the validity ball.
  CHECK(d.extended_by_zero(60).nonzero_entries(60).size() == 1);
  const auto radial = TreeFunction::radial_lift(RadialSequence(params, {0.0, 0.0, 2.0, 0.0}));
  CHECK(radial.nonzero_entries(3).size() == 6);
}
