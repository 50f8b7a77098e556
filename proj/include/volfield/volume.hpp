#pragma once

#include "volfield/first_order.hpp"
#include "volfield/quadrature.hpp"

namespace volfield {

// Volume of the section X: M -> SM in the Sasaki metric, as an integral over
// the parameter rectangle:
//   vol(X) = integral sqrt(1 + A0^2 + A1^2) r^2 sin(theta) dtheta dphi.
// VolumeResult carries the quadrature value, its refinement-based error
// estimate, and the region it was taken over.
struct VolumeResult {
  double value = 0.0;
  double error_estimate = 0.0;
  DomainRegion region = DomainRegion::full();
  QuadratureSpec spec;
  double radius = 1.0;
};

// Integrand against dtheta dphi at one point.  Closed-form families use their
// analytic A-components and extend continuously to the poles; other families
// fall back to the covariant-derivative route and require interior points.
double volume_integrand(const AngleField& field, SpherePoint p, double r);

VolumeResult volume(const AngleField& field, const DomainRegion& region,
                    const QuadratureSpec& spec = {}, double r = 1.0);

// One-dimensional reduction for the pure meridian field zeta = k phi:
//   phi_extent * integral_theta r sqrt(r^2 sin^2 + (k + cos)^2) dtheta,
// which on the unit sphere is the sqrt(1 + k^2 + 2k cos) profile.
double volume_meridian_closed(int k, double theta_lo = 0.0, double theta_hi = kPi,
                              double r = 1.0, double phi_extent = kTwoPi);

// Closed-form reduction for the circles-of-latitude field:
//   r * integral sqrt(r^2 + phi^2 sin^2) sin dtheta dphi over the rectangle.
double volume_latitude_closed(double theta_lo = 0.0, double theta_hi = kPi,
                              double phi_lo = 0.0, double phi_hi = kTwoPi,
                              double r = 1.0);

// Strict sandwich for the meridian family on a subdomain:
//   (k-1) area(D~) < vol < (k+1) area(D~), area in the parameter plane.
struct BoundsCheck {
  double volume = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double lower_margin = 0.0;  // volume - lower
  double upper_margin = 0.0;  // upper - volume
  bool holds = false;
};

BoundsCheck bounds_check(int k, const DomainRegion& region,
                         const QuadratureSpec& spec = {});

// Index-based volume floor on the unit twice-punctured sphere:
//   (pi + |I_S| + |I_N| - 2) * 2pi.
double bcj_lower_bound(int index_s, int index_n);

// The region where the latitude field undercuts the optimal meridian fields:
//   Omega = { phi != 0,  phi sin^2(theta) < |cos(theta)| }.
DomainRegion omega_region();

struct OmegaComparison {
  double vol_latitude = 0.0;
  double vol_latitude_error = 0.0;
  double euclidean_area = 0.0;
  double area_error = 0.0;
  double margin = 0.0;  // area - volume
  bool strict = false;
};

OmegaComparison omega_compare(const QuadratureSpec& spec = {});

// Unique root of cos(theta) / sin^2(theta) = 2pi on (0, pi/2), located by
// bisection and polished by Newton; residual below 1e-12.
double theta0_solve();

}  // namespace volfield
