#include "volfield/volume.hpp"

#include <cmath>

namespace volfield {

namespace {

double meridian_integrand(const ZetaSpec& spec, double theta, double phi, double r) {
  const double u = spec.derivative(phi) + std::cos(theta);
  const double s = r * std::sin(theta);
  return r * std::sqrt(s * s + u * u);
}

double latitude_integrand(double theta, double phi, double r) {
  const double s = std::sin(theta);
  const double w = phi * s;
  return r * std::sqrt(r * r + w * w) * s;
}

}  // namespace

double volume_integrand(const AngleField& field, SpherePoint p, double r) {
  require_positive_radius(r);
  switch (field.family()) {
    case FieldFamily::meridian:
      return meridian_integrand(*field.as_meridian(), p.theta, p.phi, r);
    case FieldFamily::latitude:
      return latitude_integrand(p.theta, p.phi, r);
    default: {
      const AComponents a = a_components_generic(field, p, r);
      const double s = std::sin(p.theta);
      return std::sqrt(1.0 + a.squared_modulus()) * r * r * s;
    }
  }
}

VolumeResult volume(const AngleField& field, const DomainRegion& region,
                    const QuadratureSpec& spec, double r) {
  require_positive_radius(r);
  auto f = [&](double theta, double phi) {
    return volume_integrand(field, {theta, phi}, r);
  };
  const Integral2dResult integral = integrate_region(f, region, spec);
  VolumeResult result;
  result.value = integral.value;
  result.error_estimate = integral.error_estimate;
  result.region = region;
  result.spec = spec;
  result.radius = r;
  return result;
}

double volume_meridian_closed(int k, double theta_lo, double theta_hi, double r,
                              double phi_extent) {
  require_positive_radius(r);
  auto f = [&](double theta) {
    const double u = k + std::cos(theta);
    const double s = r * std::sin(theta);
    return r * std::sqrt(s * s + u * u);
  };
  return phi_extent * integrate_interval(f, theta_lo, theta_hi, 256, 8);
}

double volume_latitude_closed(double theta_lo, double theta_hi, double phi_lo,
                              double phi_hi, double r) {
  require_positive_radius(r);
  auto f = [&](double theta, double phi) { return latitude_integrand(theta, phi, r); };
  QuadratureSpec spec;
  return integrate_rectangle(f, theta_lo, theta_hi, phi_lo, phi_hi, spec).value;
}

BoundsCheck bounds_check(int k, const DomainRegion& region,
                         const QuadratureSpec& spec) {
  if (k < 1) throw DomainError("sandwich bounds require winding k >= 1");
  ZetaSpec zeta;
  zeta.winding = k;
  const AngleField field = AngleField::meridian(zeta);

  BoundsCheck check;
  check.volume = volume(field, region, spec, 1.0).value;
  const double area = region.euclidean_area(spec);
  check.lower = (k - 1) * area;
  check.upper = (k + 1) * area;
  check.lower_margin = check.volume - check.lower;
  check.upper_margin = check.upper - check.volume;
  check.holds = check.lower < check.volume && check.volume < check.upper;
  return check;
}

double bcj_lower_bound(int index_s, int index_n) {
  return (kPi + std::abs(index_s) + std::abs(index_n) - 2.0) * kTwoPi;
}

DomainRegion omega_region() {
  return DomainRegion::predicate(
      "omega",
      [](double theta, double phi) {
        if (phi <= 0.0) return false;
        const double s = std::sin(theta);
        return phi * s * s < std::fabs(std::cos(theta));
      });
}

OmegaComparison omega_compare(const QuadratureSpec& spec) {
  const DomainRegion omega = omega_region();
  auto integrand = [](double theta, double phi) {
    return latitude_integrand(theta, phi, 1.0);
  };
  const Integral2dResult vol = integrate_region(integrand, omega, spec);
  const Integral2dResult area =
      integrate_region([](double, double) { return 1.0; }, omega, spec);

  OmegaComparison cmp;
  cmp.vol_latitude = vol.value;
  cmp.vol_latitude_error = vol.error_estimate;
  cmp.euclidean_area = area.value;
  cmp.area_error = area.error_estimate;
  cmp.margin = area.value - vol.value;
  cmp.strict = cmp.margin > vol.error_estimate + area.error_estimate;
  return cmp;
}

double theta0_solve() {
  auto g = [](double theta) {
    const double s = std::sin(theta);
    return std::cos(theta) / (s * s) - kTwoPi;
  };
  // g decreases from +inf to -2pi on (0, pi/2); bisect, then polish.
  double lo = 1e-6, hi = 0.5 * kPi - 1e-6;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double theta = 0.5 * (lo + hi);
  for (int i = 0; i < 8; ++i) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double deriv = -(1.0 + c * c) / (s * s * s);
    theta -= g(theta) / deriv;
  }
  if (std::fabs(g(theta)) > 1e-12)
    throw ConvergenceError("theta0 residual exceeded 1e-12");
  return theta;
}

}  // namespace volfield
