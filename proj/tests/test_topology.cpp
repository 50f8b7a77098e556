#include <doctest.h>

#include <cmath>

#include "volfield/topology.hpp"
#include "volfield/volume.hpp"

using namespace volfield;

namespace {

AngleField meridian_field(int k, double phi0 = 0.0) {
  ZetaSpec z;
  z.winding = k;
  z.phi0 = phi0;
  return AngleField::meridian(z);
}

}  // namespace

TEST_CASE("winding against parallel transport matches the closed form") {
  for (int k = 0; k <= 5; ++k) {
    const AngleField field = meridian_field(k);
    for (int i = 0; i < 10; ++i) {
      const double theta = 0.15 + (kPi - 0.3) * i / 9.0;
      const double w = winding_relative_parallel(field, theta);
      CHECK(w == doctest::Approx(std::cos(theta) - k).epsilon(1e-8));
    }
  }
}

TEST_CASE("winding spot values") {
  CHECK(winding_relative_parallel(meridian_field(0), kPi / 3) ==
        doctest::Approx(0.5).epsilon(1e-8));
  // k=1 winding tends to zero toward the north pole
  CHECK(std::fabs(winding_relative_parallel(meridian_field(1), 0.02)) < 3e-4);
}

TEST_CASE("winding is invariant under phase shifts") {
  const double w0 = winding_relative_parallel(meridian_field(2, 0.0), 1.0);
  const double w1 = winding_relative_parallel(meridian_field(2, 2.5), 1.0);
  CHECK(w0 == doctest::Approx(w1).epsilon(1e-12));
}

TEST_CASE("winding rejects slit fields") {
  const AngleField lat = AngleField::latitude(LatitudeSpec{});
  CHECK_THROWS_AS(winding_relative_parallel(lat, 1.0), DomainError);
  CHECK_THROWS_AS(index_at_poles(lat), DomainError);
}

TEST_CASE("pole indices for the meridian family") {
  for (int k = 0; k <= 5; ++k) {
    const IndexReport report = index_at_poles(meridian_field(k));
    CHECK(report.index_north == 1 - k);
    CHECK(report.index_south == 1 + k);
    CHECK(report.euler_sum == 2);
    CHECK(poincare_hopf_check(report));
    CHECK(report.winding_samples.size() == 6);
  }
}

TEST_CASE("flipping the convention swaps the two indices") {
  const IndexReport standard = index_at_poles(meridian_field(3), IndexConvention::standard);
  const IndexReport flipped = index_at_poles(meridian_field(3), IndexConvention::flipped);
  CHECK(standard.index_north == 1 - 3);
  CHECK(standard.index_south == 1 + 3);
  CHECK(flipped.index_north == 1 + 3);
  CHECK(flipped.index_south == 1 - 3);
  CHECK(flipped.euler_sum == 2);
}

TEST_CASE("poincare-hopf verdict on synthetic reports") {
  IndexReport zero;
  zero.index_north = 0;
  zero.index_south = 0;
  zero.euler_sum = 0;
  CHECK_FALSE(poincare_hopf_check(zero));

  IndexReport ok;
  ok.index_north = -4;
  ok.index_south = 6;
  ok.euler_sum = 2;
  CHECK(poincare_hopf_check(ok));
}

TEST_CASE("grid-sampled meridian field keeps its winding") {
  GridField g(48, 96, 2, 0.02, kPi - 0.02);
  g.fill([](double, double phi) { return 2.0 * phi + 0.4; });
  const AngleField field = AngleField::grid(g);
  const double w = winding_relative_parallel(field, 1.2);
  CHECK(w == doctest::Approx(std::cos(1.2) - 2.0).epsilon(1e-4));
  const IndexReport report = index_at_poles(field);
  CHECK(report.index_north == -1);
  CHECK(report.index_south == 3);
}

TEST_CASE("index bound never exceeds the measured volume") {
  for (int k = 0; k <= 6; ++k) {
    const IndexReport report = index_at_poles(meridian_field(k));
    const double bound = bcj_lower_bound(report.index_south, report.index_north);
    const double vol = volume_meridian_closed(k);
    CHECK(bound <= vol + 1e-10 * std::max(1.0, vol));
  }
}
