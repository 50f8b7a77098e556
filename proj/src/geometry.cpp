#include "volfield/geometry.hpp"

#include <cmath>

namespace volfield {

double SphereChart::conformal_factor(double theta) const {
  return volfield::conformal_factor(theta, radius);
}

double conformal_factor(double theta, double r) {
  require_positive_radius(r);
  require_interior_theta(theta);
  const double s = std::sin(theta);
  return r * r * s * s;
}

double mercator_x(double theta) {
  require_interior_theta(theta);
  return std::log(std::tan(0.5 * theta));
}

double theta_of_x(double x) {
  return 2.0 * std::atan(std::exp(x));
}

ChristoffelTable christoffel(double theta) {
  require_interior_theta(theta);
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  return {c / s, -c * s};
}

double gauss_curvature(double theta, double r, const CurvatureFdConfig& cfg) {
  require_positive_radius(r);
  require_interior_theta(theta);
  if (!(cfg.step > 0.0)) throw ConvergenceError("curvature step must be positive");

  const double x0 = mercator_x(theta);
  auto log_lambda_x = [&](double x) {
    const double s = std::sin(theta_of_x(x));
    return 2.0 * std::log(r * s);
  };
  // log lambda does not depend on phi; the phi second difference is kept for
  // the chart Laplacian structure and vanishes identically.
  auto log_lambda_phi = [&](double) { return 2.0 * std::log(r * std::sin(theta)); };

  const double dxx = central_second_derivative(log_lambda_x, x0, cfg.step, cfg.richardson);
  const double dpp = central_second_derivative(log_lambda_phi, 0.0, cfg.step, cfg.richardson);
  const double lambda = conformal_factor(theta, r);
  // d^2/dz dzbar = (1/4)(d^2/dx^2 + d^2/dphi^2)
  return -(dxx + dpp) / (2.0 * lambda);
}

FrameVector to_frame(CoordVector v, double theta, double r) {
  require_interior_theta(theta);
  return {v.d_theta * r, v.d_phi * r * std::sin(theta)};
}

CoordVector to_coord(FrameVector v, double theta, double r) {
  require_interior_theta(theta);
  return {v.e_theta / r, v.e_phi / (r * std::sin(theta))};
}

}  // namespace volfield
