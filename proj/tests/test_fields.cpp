#include <doctest.h>

#include <cmath>
#include <random>

#include "volfield/fields.hpp"

using namespace volfield;

TEST_CASE("meridian evaluation") {
  ZetaSpec z0;
  CHECK(eval_meridian(z0, 1.1, 2.2).a == doctest::Approx(1.0));
  CHECK(eval_meridian(z0, 1.1, 2.2).b == doctest::Approx(0.0));

  ZetaSpec z1;
  z1.winding = 1;
  const FramePair at_quarter = eval_meridian(z1, 0.6, kPi / 2);
  CHECK(at_quarter.a == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(at_quarter.b == doctest::Approx(1.0));

  ZetaSpec z2;
  z2.winding = 2;
  z2.phi0 = kPi;
  const FramePair full_turn = eval_meridian(z2, 1.0, kPi / 2);
  CHECK(full_turn.a == doctest::Approx(1.0));
  CHECK(std::fabs(full_turn.b) < 1e-14);

  CHECK_THROWS_AS(eval_meridian(z0, 0.0, 0.0), DomainError);
}

TEST_CASE("zeta closure and derivative") {
  ZetaSpec z;
  z.winding = 3;
  z.phi0 = 0.7;
  z.fourier = {{0.2, -0.1}, {0.0, 0.05}};
  CHECK(z.value(kTwoPi) - z.value(0.0) == doctest::Approx(kTwoPi * 3).epsilon(1e-13));

  // derivative against a central difference
  const double fd = (z.value(1.0 + 1e-6) - z.value(1.0 - 1e-6)) / 2e-6;
  CHECK(z.derivative(1.0) == doctest::Approx(fd).epsilon(1e-8));
  CHECK(z.perturbation_norm() ==
        doctest::Approx(std::sqrt(0.2 * 0.2 + 0.1 * 0.1 + 0.05 * 0.05)));
}

TEST_CASE("latitude evaluation and the slit domain") {
  LatitudeSpec spec;
  const FramePair eq = eval_latitude(spec, kPi / 2, 1.234);
  CHECK(std::fabs(eq.a) < 1e-15);
  CHECK(eq.b == doctest::Approx(1.0));

  const FramePair p = eval_latitude(spec, kPi / 3, kPi);
  CHECK(p.a == doctest::Approx(1.0));
  CHECK(std::fabs(p.b) < 1e-14);

  CHECK_THROWS_AS(eval_latitude(spec, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(eval_latitude(spec, 1.0, kTwoPi), DomainError);
  CHECK_THROWS_AS(eval_latitude(spec, 1.0, -0.5), DomainError);

  // Holonomy mismatch: the angle increment around a parallel is 2 pi cos,
  // never an integer multiple of 2 pi away from the poles.
  for (double theta : {0.5, 1.0, 2.0}) {
    const double mismatch = spec.eta(theta, kTwoPi) - spec.eta(theta, 0.0);
    const double frac = mismatch / kTwoPi;
    CHECK(std::fabs(frac - std::lround(frac)) > 0.05);
  }
}

TEST_CASE("orthonormal complement") {
  const FramePair y1 = orthonormal_complement({1.0, 0.0});
  CHECK(y1.a == doctest::Approx(0.0));
  CHECK(y1.b == doctest::Approx(1.0));
  const FramePair y2 = orthonormal_complement({0.0, 1.0});
  CHECK(y2.a == doctest::Approx(-1.0));
  CHECK(y2.b == doctest::Approx(0.0));

  const double zeta = 0.83;
  const FramePair y3 = orthonormal_complement({std::cos(zeta), std::sin(zeta)});
  CHECK(y3.a == doctest::Approx(-std::sin(zeta)));
  CHECK(y3.b == doctest::Approx(std::cos(zeta)));

  CHECK_THROWS_AS(orthonormal_complement({0.5, 0.5}), DomainError);
}

TEST_CASE("t-type fields: meridian direction transports constants") {
  TTypeSpec t;  // T = e_theta, initial angle 0 on the equator
  for (double theta : {0.2, 1.0, 2.8}) {
    for (double phi : {0.0, 2.0, 6.0}) {
      const FramePair fc = eval_ttype(t, theta, phi);
      CHECK(fc.a == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(std::fabs(fc.b) < 1e-9);
    }
  }
}

TEST_CASE("t-type fields: meridian direction reproduces any zeta profile") {
  TTypeSpec t;
  t.initial.winding = 2;
  t.initial.phi0 = 0.3;
  t.initial.fourier = {{0.1, -0.2}};
  const AngleField ttype = AngleField::ttype(t);
  const AngleField meridian = AngleField::meridian(t.initial);
  for (double theta : {0.3, 1.4, 2.6}) {
    for (double phi : {0.1, 2.3, 5.7}) {
      const FramePair a = ttype.frame_coefficients(theta, phi);
      const FramePair b = meridian.frame_coefficients(theta, phi);
      CHECK(a.a == doctest::Approx(b.a).epsilon(1e-7));
      CHECK(a.b == doctest::Approx(b.b).epsilon(1e-7));
    }
  }
}

TEST_CASE("t-type fields: parallels direction reproduces the latitude field") {
  TTypeSpec t;
  t.t_theta = 0.0;
  t.t_phi = 1.0;
  // Latitude angle pi/2 - (phi cos + phi0) restricted to the meridian phi = pi:
  // constant pi/2 - phi0 plus the first cosine harmonic in theta.
  t.initial.phi0 = kPi / 2;
  t.initial.fourier = {{-kPi, 0.0}};
  LatitudeSpec lat;
  for (double theta : {0.3, 0.9, 1.8, 2.7}) {
    for (double phi : {0.4, 1.9, 3.9, 6.0}) {
      const FramePair a = eval_ttype(t, theta, phi);
      const FramePair b = eval_latitude(lat, theta, phi);
      CHECK(a.a == doctest::Approx(b.a).epsilon(1e-7));
      CHECK(a.b == doctest::Approx(b.b).epsilon(1e-7));
    }
  }
}

TEST_CASE("t-type transport stays unit") {
  TTypeSpec t;
  t.t_theta = 0.6;
  t.t_phi = 0.8;
  t.initial.winding = 1;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ut(0.15, kPi - 0.15), up(0.0, kTwoPi);
  for (int i = 0; i < 100000; ++i) {
    const FramePair fc = eval_ttype(t, ut(rng), up(rng));
    CHECK(std::fabs(fc.a * fc.a + fc.b * fc.b - 1.0) < 1e-9);
  }

  TTypeSpec bad;
  bad.t_theta = 0.3;
  bad.t_phi = 0.3;
  CHECK_THROWS_AS(eval_ttype(bad, 1.0, 1.0), DomainError);
}

TEST_CASE("closed-form families stay unit at random points") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ut(1e-6, kPi - 1e-6), up(0.0, kTwoPi);
  ZetaSpec z;
  z.winding = 4;
  z.fourier = {{0.3, 0.0}, {0.0, -0.2}};
  const AngleField meridian = AngleField::meridian(z);
  const AngleField latitude = AngleField::latitude(LatitudeSpec{1.1});
  for (int i = 0; i < 100000; ++i) {
    const double theta = ut(rng);
    const double phi = up(rng);
    const FramePair m = meridian.frame_coefficients(theta, phi);
    CHECK(std::fabs(m.a * m.a + m.b * m.b - 1.0) < 1e-12);
    if (phi > 0.0 && phi < kTwoPi) {
      const FramePair l = latitude.frame_coefficients(theta, phi);
      CHECK(std::fabs(l.a * l.a + l.b * l.b - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("phase offsets act as rigid rotations of the frame pair") {
  ZetaSpec za, zb;
  za.winding = zb.winding = 2;
  za.phi0 = 0.25;
  zb.phi0 = 1.75;
  const double delta = zb.phi0 - za.phi0;
  for (double theta : {0.4, 1.5}) {
    for (double phi : {0.0, 2.9}) {
      const FramePair a = eval_meridian(za, theta, phi);
      const FramePair b = eval_meridian(zb, theta, phi);
      const FramePair rotated{a.a * std::cos(delta) - a.b * std::sin(delta),
                              a.a * std::sin(delta) + a.b * std::cos(delta)};
      CHECK(b.a == doctest::Approx(rotated.a).epsilon(1e-14));
      CHECK(b.b == doctest::Approx(rotated.b).epsilon(1e-14));
    }
  }
}

TEST_CASE("angle accessor is an unwrapped lift") {
  ZetaSpec z;
  z.winding = 3;
  const AngleField field = AngleField::meridian(z);
  CHECK(field.angle(1.0, kTwoPi) - field.angle(1.0, 0.0) ==
        doctest::Approx(kTwoPi * 3).epsilon(1e-13));
  CHECK(field.winding().value() == 3);

  const AngleField lat = AngleField::latitude(LatitudeSpec{});
  CHECK_FALSE(lat.winding().has_value());
}

TEST_CASE("grid fields interpolate their nodes and carry the winding closure") {
  GridField g(9, 12, 2);
  g.fill([](double theta, double phi) { return 2.0 * phi + 0.3 * std::sin(theta); });
  for (int i = 0; i < g.n_theta; ++i) {
    CHECK(g.wrapped(i, g.n_phi) - g.at(i, 0) == doctest::Approx(kTwoPi * 2));
    for (int j = 0; j < g.n_phi; ++j)
      CHECK(g.angle(g.theta_at(i), g.phi_at(j)) == doctest::Approx(g.at(i, j)).epsilon(1e-13));
  }
  // winding continuation past 2 pi
  CHECK(g.angle(1.0, 0.3 + kTwoPi) - g.angle(1.0, 0.3) ==
        doctest::Approx(2 * kTwoPi).epsilon(1e-12));

  const AngleField field = AngleField::grid(g);
  CHECK(field.winding().value() == 2);
  const FramePair fc = field.frame_coefficients(1.0, 1.0);
  CHECK(std::fabs(fc.a * fc.a + fc.b * fc.b - 1.0) < 1e-12);
}
