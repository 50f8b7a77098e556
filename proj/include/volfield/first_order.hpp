#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "volfield/fields.hpp"

namespace volfield {

// The pair (A0, A1) housing A = A1 + i A0, with
//   A0 = <nabla_X X, Y>,  A1 = <nabla_Y X, Y>.
struct AComponents {
  double a0 = 0.0;
  double a1 = 0.0;

  double squared_modulus() const { return a0 * a0 + a1 * a1; }
};

// Closed form for the meridian-parallel family:
//   A0 = sin(zeta) (zeta' + cos theta) / (r sin theta)
//   A1 = cos(zeta) (zeta' + cos theta) / (r sin theta)
AComponents a_components_meridian(const ZetaSpec& spec, double theta, double phi,
                                  double r);

// Closed form for the circles-of-latitude family:
//   A0 = a phi sin(theta) / r,  A1 = -b phi sin(theta) / r.
AComponents a_components_latitude(const LatitudeSpec& spec, double theta,
                                  double phi, double r);

// Metric route: covariant derivatives of the field along X and Y projected
// onto Y.  Works for every family; the closed forms above are its oracles.
AComponents a_components_generic(const AngleField& field, SpherePoint p, double r,
                                 const FdConfig& fd = {});

// Dispatch: closed form where one exists, generic otherwise.
AComponents a_components(const AngleField& field, SpherePoint p, double r,
                         const FdConfig& fd = {});

// (A1 + i A0) / sqrt(1 + |A|^2); modulus strictly below 1.
std::complex<double> magnus(AComponents a);

std::complex<double> magnus_at(const AngleField& field, SpherePoint p, double r,
                               const FdConfig& fd = {});

// Wirtinger derivative d/dzbar = (d/dx + i d/dphi)/2 of a complex-valued
// function on the Mercator chart, by plain central differences.
std::complex<double> wirtinger_dzbar(
    const std::function<std::complex<double>(double, double)>& f, double x,
    double phi, double step = 1e-5);

// Residual of the Cauchy-Riemann (sufficient) condition: d/dzbar of the
// normalized A-function in the Mercator chart.  Zero iff the sufficient
// minimality condition holds at the point.
std::complex<double> cr_residual(const AngleField& field, SpherePoint p, double r,
                                 const FdConfig& fd = {});

// Residual of the Euler-Lagrange (necessary) condition:
//   X(A0/sqrt(1+|A|^2)) + Y(A1/sqrt(1+|A|^2)).
// Directional derivatives are plain central differences along the frozen
// coordinate direction of X resp. Y, second-order in the step.
double el_residual(const AngleField& field, SpherePoint p, double r,
                   const FdConfig& fd = {});

// Residual of the companion real-part equation:
//   X(A1/sqrt(1+|A|^2)) - Y(A0/sqrt(1+|A|^2)).
// Reported as data; whether it is necessary for minimality is open.
double realpart_residual(const AngleField& field, SpherePoint p, double r,
                         const FdConfig& fd = {});

// Closed-form value of d(e^{i zeta} f)(X + iY) for the pure meridian field
// zeta = k phi + phi0:  (1/r) f'_theta - (k/(r sin theta)) f  with
// f = (k + cos)/sqrt(r^2 sin^2 + (k + cos)^2).  Purely real.
std::complex<double> meridian_directional_identity(int k, double theta, double r);

// f(theta) above, exposed for cross-checks.
double meridian_profile(int k, double theta, double r);

struct ResidualGridSpec {
  int n_theta = 101;
  int n_phi = 101;
  double theta_margin = kGridMargin;
};

struct ResidualSample {
  double theta;
  double phi;
  std::complex<double> cr;
  double el;
  double realpart;
};

// Pointwise residuals over a sampling grid plus their sup norms.  Sup norms
// are maxima of the recorded absolute values; ties break lexicographically
// on (theta, phi), so the report is independent of evaluation order.
struct ResidualReport {
  ResidualGridSpec grid;
  bool slit = false;  // phi nodes offset into (0, 2pi) for slit domains
  double radius = 1.0;
  double fd_step = 1e-5;
  std::vector<ResidualSample> samples;
  double sup_cr = 0.0;
  double sup_el = 0.0;
  double sup_realpart = 0.0;
  SpherePoint argmax_cr{0, 0};
  SpherePoint argmax_el{0, 0};
  SpherePoint argmax_realpart{0, 0};
};

ResidualReport residual_sweep(const AngleField& field, double r,
                              const ResidualGridSpec& grid = {},
                              const FdConfig& fd = {});

}  // namespace volfield
