#include <doctest.h>

#include <cmath>
#include <random>

#include "volfield/fields.hpp"
#include "volfield/geometry.hpp"
#include "oracles.hpp"

using namespace volfield;

TEST_CASE("chart construction guards the radius") {
  const SphereChart chart(2.0);
  CHECK(chart.conformal_factor(kPi / 2) == doctest::Approx(4.0));
  CHECK_THROWS_AS(SphereChart(0.0), DomainError);
  CHECK_THROWS_AS(SphereChart(-1.0), DomainError);
}

TEST_CASE("conformal factor values and domain") {
  CHECK(conformal_factor(kPi / 2, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(conformal_factor(kPi / 6, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(conformal_factor(kPi / 4, 1.0) == doctest::Approx(0.5).epsilon(1e-15));

  for (double theta = 0.01; theta < kPi; theta += 0.1)
    CHECK(conformal_factor(theta, 0.7) > 0.0);

  CHECK_THROWS_AS(conformal_factor(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(conformal_factor(kPi, 1.0), DomainError);
  CHECK_THROWS_AS(conformal_factor(-0.3, 1.0), DomainError);
  CHECK_THROWS_AS(conformal_factor(1.0, 0.0), DomainError);
}

TEST_CASE("mercator abscissa and its inverse") {
  CHECK(mercator_x(kPi / 2) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(theta_of_x(0.0) == doctest::Approx(kPi / 2).epsilon(1e-15));

  // x(pi/3) by integrating dx = dtheta / sin(theta) from the equator.
  const double by_quadrature = oracles::adaptive_simpson(
      [](double t) { return 1.0 / std::sin(t); }, kPi / 2, kPi / 3, 1e-13);
  CHECK(mercator_x(kPi / 3) == doctest::Approx(by_quadrature).epsilon(1e-11));
  CHECK(mercator_x(kPi / 3) == doctest::Approx(std::log(std::tan(kPi / 6))).epsilon(1e-15));

  for (double theta = 0.01; theta <= kPi - 0.01; theta += 0.0199) {
    CHECK(theta_of_x(mercator_x(theta)) == doctest::Approx(theta).epsilon(1e-12));
  }
  CHECK_THROWS_AS(mercator_x(0.0), DomainError);
}

TEST_CASE("christoffel coefficients") {
  const ChristoffelTable eq = christoffel(kPi / 2);
  CHECK(eq.phi_mixed == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::fabs(eq.theta_phiphi) < 1e-15);

  const ChristoffelTable q = christoffel(kPi / 4);
  CHECK(q.phi_mixed == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(q.theta_phiphi == doctest::Approx(-0.5).epsilon(1e-14));

  CHECK_THROWS_AS(christoffel(kPi), DomainError);
}

TEST_CASE("christoffel matches finite differences of the metric") {
  for (double r : {0.5, 1.0, 2.0}) {
    for (double theta : {0.2, 0.7, 1.3, 2.1, 2.9}) {
      const ChristoffelTable table = christoffel(theta);
      const oracles::MetricChristoffel fd = oracles::christoffel_from_metric(theta, r);
      CHECK(table.theta_phiphi == doctest::Approx(fd.gamma_theta_phiphi).epsilon(1e-6));
      CHECK(table.phi_mixed == doctest::Approx(fd.gamma_phi_thetaphi).epsilon(1e-6));
    }
  }
}

TEST_CASE("gauss curvature equals 1/r^2") {
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> theta_dist(0.1, kPi - 0.1);
  for (double r : {0.5, 1.0, 2.0}) {
    for (int i = 0; i < 20; ++i) {
      const double theta = theta_dist(rng);
      CHECK(gauss_curvature(theta, r) == doctest::Approx(1.0 / (r * r)).epsilon(1e-6));
    }
  }
}

TEST_CASE("gauss curvature is step-size robust and guards its domain") {
  // Same value from two different second-difference steps (Richardson level on).
  CurvatureFdConfig coarse;
  CurvatureFdConfig fine;
  fine.step = 2.5e-3;
  const double k1 = gauss_curvature(1.1, 1.0, coarse);
  const double k2 = gauss_curvature(1.1, 1.0, fine);
  CHECK(std::fabs(k1 - k2) < 1e-7);

  CHECK_THROWS_AS(gauss_curvature(0.0, 1.0), DomainError);
  CurvatureFdConfig bad;
  bad.step = 0.0;
  CHECK_THROWS_AS(gauss_curvature(1.0, 1.0, bad), ConvergenceError);
}

TEST_CASE("frame and coordinate vector conversions invert") {
  const double theta = 0.8, r = 1.7;
  const CoordVector v{0.3, -1.2};
  const FrameVector f = to_frame(v, theta, r);
  const CoordVector back = to_coord(f, theta, r);
  CHECK(back.d_theta == doctest::Approx(v.d_theta).epsilon(1e-14));
  CHECK(back.d_phi == doctest::Approx(v.d_phi).epsilon(1e-14));
}

TEST_CASE("meridian fields are parallel along meridians") {
  for (int k : {0, 1, 3}) {
    ZetaSpec z;
    z.winding = k;
    z.phi0 = 0.4;
    const AngleField field = AngleField::meridian(z);
    for (double theta : {0.1, 0.9, 2.2}) {
      for (double phi : {0.0, 1.3, 4.4}) {
        const FrameVector d = covariant_derivative(field, {theta, phi}, {1.0, 0.0});
        CHECK(std::fabs(d.e_theta) < 1e-6);
        CHECK(std::fabs(d.e_phi) < 1e-6);
      }
    }
  }
}

TEST_CASE("latitude fields are parallel along parallels") {
  const AngleField field = AngleField::latitude(LatitudeSpec{});
  for (double theta : {0.3, 1.2, 2.5}) {
    for (double phi : {0.7, 3.1, 5.9}) {
      const FrameVector d = covariant_derivative(field, {theta, phi}, {0.0, 1.0});
      CHECK(std::fabs(d.e_theta) < 1e-6);
      CHECK(std::fabs(d.e_phi) < 1e-6);
    }
  }
}

TEST_CASE("latitude field rotates toward Y along meridians") {
  const LatitudeSpec spec;
  const AngleField field = AngleField::latitude(spec);
  for (double theta : {0.4, 1.0, 2.0}) {
    for (double phi : {0.5, 2.0, 5.0}) {
      const FrameVector d = covariant_derivative(field, {theta, phi}, {1.0, 0.0});
      const FramePair x = eval_latitude(spec, theta, phi);
      const FramePair y = orthonormal_complement(x);
      const double rate = phi * std::sin(theta);
      CHECK(d.e_theta == doctest::Approx(rate * y.a).epsilon(1e-6));
      CHECK(d.e_phi == doctest::Approx(rate * y.b).epsilon(1e-6));
    }
  }
}

TEST_CASE("covariant derivative is additive in the direction") {
  ZetaSpec z;
  z.winding = 2;
  const AngleField field = AngleField::meridian(z);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 25; ++i) {
    const SpherePoint p{0.3 + 2.5 * (0.5 + 0.5 * u(rng)), 3.0 + u(rng)};
    const CoordVector v1{u(rng), u(rng)};
    const CoordVector v2{u(rng), u(rng)};
    const FrameVector sum = covariant_derivative(field, p, v1 + v2);
    const FrameVector d1 = covariant_derivative(field, p, v1);
    const FrameVector d2 = covariant_derivative(field, p, v2);
    CHECK(sum.e_theta == doctest::Approx(d1.e_theta + d2.e_theta).epsilon(1e-8));
    CHECK(sum.e_phi == doctest::Approx(d1.e_phi + d2.e_phi).epsilon(1e-8));
  }
}

TEST_CASE("covariant derivative rejects stencils crossing the slit") {
  const AngleField field = AngleField::latitude(LatitudeSpec{});
  CHECK_THROWS_AS(covariant_derivative(field, {1.0, 5e-7}, {0.0, 1.0}), DomainError);
}
