#pragma once

#include "volfield/common.hpp"

namespace volfield {

// Round sphere of radius r in colatitude/longitude coordinates,
// (theta, phi) in D = (0, pi) x [0, 2pi).  The punctures are the poles
// theta -> 0 (north) and theta -> pi (south); the chart never evaluates
// on them.  The metric is r^2 dtheta^2 + r^2 sin^2(theta) dphi^2, equal to
// lambda (dx^2 + dphi^2) in the Mercator coordinate x with
// lambda = r^2 sin^2(theta).
struct SphereChart {
  double radius;

  explicit SphereChart(double r) : radius(r) { require_positive_radius(r); }

  double conformal_factor(double theta) const;
};

// lambda(theta) = r^2 sin^2(theta).  Positive on the open interval.
double conformal_factor(double theta, double r);

// Mercator abscissa x(theta) = log tan(theta/2), normalized so x(pi/2) = 0.
// Satisfies sin(theta) dx = dtheta along the chart map.
double mercator_x(double theta);

// Exact inverse of mercator_x: theta(x) = 2 atan(exp(x)).
double theta_of_x(double x);

// The nonzero structure constants of the Levi-Civita connection in
// (theta, phi) coordinates:
//   nabla_theta d_theta = 0
//   nabla_theta d_phi = nabla_phi d_theta = cot(theta) d_phi
//   nabla_phi d_phi = -cos(theta) sin(theta) d_theta
struct ChristoffelTable {
  double phi_mixed;       // coefficient of d_phi in nabla_theta d_phi
  double theta_phiphi;    // coefficient of d_theta in nabla_phi d_phi
};

ChristoffelTable christoffel(double theta);

// Second-difference step for the curvature check.  Second derivatives are
// noise-limited near step^2 ~ machine epsilon, so the default is much larger
// than the first-derivative default in FdConfig.
struct CurvatureFdConfig {
  double step = 5e-3;
  bool richardson = true;
};

// Gauss curvature through the conformal chart,
//   K = -(2/lambda) d^2(log lambda) / dz dzbar,
// evaluated by central second differences in (x, phi) with one Richardson
// level.  Equals 1/r^2 up to discretization error; accuracy degrades inside
// roughly theta < 0.1 where 1/lambda amplifies rounding noise.
double gauss_curvature(double theta, double r, const CurvatureFdConfig& cfg = {});

// Tangent vectors carry their basis in the type: coordinate components are
// w.r.t. (d_theta, d_phi); frame components are w.r.t. the orthonormal frame
// e_theta = d_theta / r,  e_phi = d_phi / (r sin theta).
struct CoordVector {
  double d_theta;
  double d_phi;
};

struct FrameVector {
  double e_theta;
  double e_phi;
};

inline CoordVector operator+(CoordVector u, CoordVector v) {
  return {u.d_theta + v.d_theta, u.d_phi + v.d_phi};
}

inline FrameVector operator+(FrameVector u, FrameVector v) {
  return {u.e_theta + v.e_theta, u.e_phi + v.e_phi};
}

inline FrameVector operator*(double s, FrameVector v) {
  return {s * v.e_theta, s * v.e_phi};
}

// Frame components of a coordinate vector at colatitude theta.
FrameVector to_frame(CoordVector v, double theta, double r);

// Coordinate components of a frame vector at colatitude theta.
CoordVector to_coord(FrameVector v, double theta, double r);

// Central first derivative with optional one-level Richardson extrapolation.
template <class F>
double central_derivative(F&& f, double x, const FdConfig& cfg = {}) {
  const double h = cfg.step;
  auto diff = [&](double step) { return (f(x + step) - f(x - step)) / (2.0 * step); };
  if (!cfg.richardson) return diff(h);
  const double d1 = diff(h);
  const double d2 = diff(0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

// Central second derivative, same extrapolation policy.
template <class F>
double central_second_derivative(F&& f, double x, double h, bool richardson = true) {
  if (x + h == x) throw ConvergenceError("second-difference step underflow");
  auto diff = [&](double step) {
    return ((f(x + step) + f(x - step)) - 2.0 * f(x)) / (step * step);
  };
  if (!richardson) return diff(h);
  const double d1 = diff(h);
  const double d2 = diff(0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace volfield
