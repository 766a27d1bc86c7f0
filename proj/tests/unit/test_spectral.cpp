#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "support.hpp"
#include "treedyn/spectral.hpp"

using namespace treedyn;
using support::err;

TEST_CASE("gamma and the c-function at reference points") {
  const TreeParams q2(2);
  CHECK(err(gamma(0.0, q2), 0.0571909584179366341322075171935) < 1e-15);
  CHECK(err(c_function(SpectralPoint(1.0, q2), q2), cplx(0.5, -0.200648283884001346709677937676)) < 1e-14);
  CHECK(err(gamma(cplx(0.0, -0.25), q2), 0.0430000181632832824067496923244) < 1e-15);
  CHECK_THROWS_AS(c_function(SpectralPoint(0.0, q2), q2), Error);
  try {
    c_function(SpectralPoint(q2.tau() / 2.0, q2), q2);
    FAIL("no pole at tau/2");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleAtHalfPeriod);
  }
}

TEST_CASE("gamma is tau-periodic and even") {
  auto g = support::rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const int q : {2, 3, 7}) {
    const TreeParams params(q);
    for (int i = 0; i < 50; ++i) {
      const cplx z(u(g), u(g) / 6.0);
      CHECK(err(gamma(z + params.tau(), params), gamma(z, params)) < 1e-13);
      CHECK(err(gamma(-z, params), gamma(z, params)) < 1e-14);
      const SpectralPoint r(z + 3.0 * params.tau(), params);
      CHECK(r.re() >= -params.tau() / 2.0);
      CHECK(r.re() < params.tau() / 2.0);
    }
  }
}

TEST_CASE("phi matches reference values") {
  const TreeParams q2(2), q3(3);
  CHECK(phi(SpectralPoint(0.0, q2), 0, q2) == cplx(1.0));
  CHECK(err(phi(SpectralPoint(0.0, q2), 1, q2), 0.942809041582063365867792482806) < 1e-15);
  CHECK(err(phi(SpectralPoint(cplx(0.4, 0.2), q3), 5, q3),
            cplx(-0.0149256144761186386635391317391, -0.153959670733578677834424949597)) < 1e-14);
  CHECK_THROWS_AS(phi(SpectralPoint(0.3, q2), -1, q2), Error);
}

TEST_CASE("phi agrees with the eigenvalue recurrence on every branch") {
  for (const int q : {2, 3, 5}) {
    const TreeParams params(q);
    const double tau = params.tau();
    const std::vector<cplx> points{0.0,           tau / 2.0,       -tau / 2.0,      cplx(0.0, 0.3),
                                   cplx(tau / 2.0, -0.2), 1e-7,    tau / 2.0 - 1e-7, cplx(0.37, 0.11),
                                   cplx(-1.3, -0.45),     2e-5,    cplx(0.9, 0.0)};
    for (const cplx z : points) {
      const SpectralPoint sp(z, params);
      const auto reference = support::phi_by_recurrence(gamma(sp, params), q, 12);
      const auto seq = spherical_function(sp, 12, params);
      for (int n = 0; n <= 12; ++n) {
        INFO("q=" << q << " z=" << z << " n=" << n);
        CHECK(err(seq[static_cast<std::size_t>(n)], reference[static_cast<std::size_t>(n)]) < 5e-10);
      }
    }
  }
}

TEST_CASE("phi is even in z") {
  const TreeParams params(3);
  const SpectralPoint z(cplx(0.8, 0.15), params), mz(cplx(-0.8, -0.15), params);
  for (int n = 0; n < 10; ++n) CHECK(err(phi(z, n, params), phi(mz, n, params)) < 1e-13);
}

TEST_CASE("delta_p and exponents") {
  CHECK(delta_p(1.0) == 0.5);
  CHECK(delta_p(2.0) == 0.0);
  CHECK(delta_p(4.0) == -0.25);
  CHECK(delta_p(std::numeric_limits<double>::infinity()) == -0.5);
  CHECK_THROWS_AS(delta_p(0.5), Error);
  CHECK_THROWS_AS(delta_p(std::nan("")), Error);
  CHECK(std::isinf(LebesgueExponent(1.0).conjugate()));
  CHECK(LebesgueExponent(std::numeric_limits<double>::infinity()).conjugate() == 1.0);
  CHECK(LebesgueExponent(3.0).conjugate() == doctest::Approx(1.5));
}

TEST_CASE("strip and ellipse membership") {
  const TreeParams params(2);
  CHECK(strip_contains(cplx(1.0, 0.1), 4.0) == Region::Interior);
  CHECK(strip_contains(cplx(1.0, -0.25), 4.0) == Region::Boundary);
  CHECK(strip_contains(cplx(1.0, 0.3), 4.0) == Region::Outside);
  CHECK(strip_contains(cplx(1.0, 0.0), 2.0) == Region::Boundary);

  for (const double p : {1.0, 1.5, 3.0, 8.0}) {
    for (const cplx w : ellipse_boundary_points(p, params, 64)) {
      CHECK(spectrum_membership(w, p, params).classification == Region::Boundary);
    }
    CHECK(spectrum_membership(1.0, p, params).classification == Region::Interior);
    CHECK(spectrum_membership(cplx(1.0, 5.0), p, params).classification == Region::Outside);
  }
  CHECK_THROWS_AS(ellipse_boundary_points(2.0, params, 8), Error);
  CHECK_THROWS_AS(ellipse_parameters(1, params), Error);

  // p = 2: the segment [1 - b, 1 + b] with b = 2 sqrt(q) / (q + 1).
  const double b = 2.0 * std::sqrt(2.0) / 3.0;
  CHECK(spectrum_membership(1.0, 2.0, params).classification == Region::Boundary);
  CHECK(spectrum_membership(1.0 + b, 2.0, params).classification == Region::Boundary);
  CHECK(spectrum_membership(1.0 + b + 1e-6, 2.0, params).classification == Region::Outside);
  CHECK(spectrum_membership(cplx(1.0, 1e-6), 2.0, params).classification == Region::Outside);
}

TEST_CASE("the spectrum grows with |delta_p|") {
  const TreeParams params(3);
  for (const cplx w : ellipse_boundary_points(3.0, params, 32)) {
    CHECK(spectrum_membership(w, 6.0, params).classification == Region::Interior);
    CHECK(spectrum_membership(w, 2.5, params).classification == Region::Outside);
  }
}

TEST_CASE("point spectrum") {
  const TreeParams params(2);
  CHECK(point_spectrum_contains(1.0, 4.0, params));
  CHECK_FALSE(point_spectrum_contains(1.0, 2.0, params));
  CHECK_FALSE(point_spectrum_contains(1.0, 1.5, params));
  CHECK_FALSE(point_spectrum_contains(ellipse_boundary_points(4.0, params, 8)[3], 4.0, params));
  CHECK_THROWS_AS(point_spectrum_contains(1.0, std::numeric_limits<double>::infinity(), params), Error);
}

TEST_CASE("Phi_p threshold") {
  CHECK(phi_p_threshold(cplx(0.0, 1.0), 4.0, TreeParams(2)) ==
        doctest::Approx(0.164195238501569339781583660635).epsilon(1e-14));
  CHECK(phi_p_threshold(cplx(1.0, 2.0), 3.0, TreeParams(3)) ==
        doctest::Approx(0.936554945994582527257909182489).epsilon(1e-14));
  CHECK(phi_p_threshold(0.0, 5.0, TreeParams(2)) == 0.0);
  CHECK_THROWS_AS(phi_p_threshold(1.0, 2.0, TreeParams(2)), Error);
  CHECK_THROWS_AS(phi_p_threshold(1.0, std::numeric_limits<double>::infinity(), TreeParams(2)), Error);
}

TEST_CASE("Plancherel density is a probability density") {
  for (const int q : {2, 3, 5}) {
    const TreeParams params(q);
    const double half = params.tau() / 2.0;
    const auto f = [&](double s) { return plancherel_density(s, params); };
    const double total = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -half, half, 10, 1e-14);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(plancherel_density(0.0, params) == 0.0);
    CHECK(plancherel_density(0.4, params) == doctest::Approx(plancherel_density(-0.4, params)));
    const cplx c = c_function(SpectralPoint(0.4, params), params);
    CHECK(c_function_inverse_square(0.4, params) == doctest::Approx(1.0 / std::norm(c)).epsilon(1e-13));
  }
}
