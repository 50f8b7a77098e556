#include "volfield/first_order.hpp"

#include <algorithm>
#include <cmath>

#include "volfield/parallel.hpp"

namespace volfield {

AComponents a_components_meridian(const ZetaSpec& spec, double theta, double phi,
                                  double r) {
  require_positive_radius(r);
  require_interior_theta(theta);
  const double z = spec.value(phi);
  const double factor = (spec.derivative(phi) + std::cos(theta)) / (r * std::sin(theta));
  return {std::sin(z) * factor, std::cos(z) * factor};
}

AComponents a_components_latitude(const LatitudeSpec& spec, double theta,
                                  double phi, double r) {
  require_positive_radius(r);
  const FramePair fc = eval_latitude(spec, theta, phi);
  const double factor = phi * std::sin(theta) / r;
  return {fc.a * factor, -fc.b * factor};
}

AComponents a_components_generic(const AngleField& field, SpherePoint p, double r,
                                 const FdConfig& fd) {
  require_positive_radius(r);
  const FramePair x = field.frame_coefficients(p.theta, p.phi);
  const FramePair y = orthonormal_complement(x);
  const CoordVector dir_x = to_coord({x.a, x.b}, p.theta, r);
  const CoordVector dir_y = to_coord({y.a, y.b}, p.theta, r);
  const FrameVector dxx = covariant_derivative(field, p, dir_x, fd);
  const FrameVector dyx = covariant_derivative(field, p, dir_y, fd);
  // <., Y> in the orthonormal frame is the plain dot product.
  return {y.a * dxx.e_theta + y.b * dxx.e_phi,
          y.a * dyx.e_theta + y.b * dyx.e_phi};
}

AComponents a_components(const AngleField& field, SpherePoint p, double r,
                         const FdConfig& fd) {
  switch (field.family()) {
    case FieldFamily::meridian:
      return a_components_meridian(*field.as_meridian(), p.theta, p.phi, r);
    case FieldFamily::latitude:
      return a_components_latitude(*field.as_latitude(), p.theta, p.phi, r);
    default:
      return a_components_generic(field, p, r, fd);
  }
}

std::complex<double> magnus(AComponents a) {
  const double denom = std::sqrt(1.0 + a.squared_modulus());
  return {a.a1 / denom, a.a0 / denom};
}

namespace {

// Inner step for A-components when the magnus value of a non-closed-form
// field is differentiated again: nesting two central differences at the same
// step would push rounding noise above the outer truncation.
constexpr double kNestedInnerStep = 1e-3;

std::complex<double> magnus_dispatch(const AngleField& field, SpherePoint p,
                                     double r, const FdConfig& fd) {
  switch (field.family()) {
    case FieldFamily::meridian:
      return magnus(a_components_meridian(*field.as_meridian(), p.theta, p.phi, r));
    case FieldFamily::latitude:
      return magnus(a_components_latitude(*field.as_latitude(), p.theta, p.phi, r));
    default: {
      FdConfig inner = fd;
      inner.step = kNestedInnerStep;
      return magnus(a_components_generic(field, p, r, inner));
    }
  }
}

// Central difference of a scalar along the frozen coordinate direction of a
// frame vector (u, v): sample points p +- h (u/r, v/(r sin theta_p)).
template <class F>
double frozen_directional(F&& scalar, SpherePoint p, double u, double v, double r,
                          double h) {
  const double dth = u / r;
  const double dph = v / (r * std::sin(p.theta));
  const double plus = scalar({p.theta + h * dth, p.phi + h * dph});
  const double minus = scalar({p.theta - h * dth, p.phi - h * dph});
  return (plus - minus) / (2.0 * h);
}

}  // namespace

std::complex<double> magnus_at(const AngleField& field, SpherePoint p, double r,
                               const FdConfig& fd) {
  require_interior_theta(p.theta);
  return magnus_dispatch(field, p, r, fd);
}

std::complex<double> wirtinger_dzbar(
    const std::function<std::complex<double>(double, double)>& f, double x,
    double phi, double step) {
  const std::complex<double> dx = (f(x + step, phi) - f(x - step, phi)) / (2.0 * step);
  const std::complex<double> dp = (f(x, phi + step) - f(x, phi - step)) / (2.0 * step);
  return 0.5 * (dx + std::complex<double>(0.0, 1.0) * dp);
}

std::complex<double> cr_residual(const AngleField& field, SpherePoint p, double r,
                                 const FdConfig& fd) {
  require_interior_theta(p.theta);
  const double x0 = mercator_x(p.theta);
  auto m = [&](double x, double phi) {
    return magnus_dispatch(field, {theta_of_x(x), phi}, r, fd);
  };
  return wirtinger_dzbar(m, x0, p.phi, fd.step);
}

double el_residual(const AngleField& field, SpherePoint p, double r,
                   const FdConfig& fd) {
  require_interior_theta(p.theta);
  const FramePair x = field.frame_coefficients(p.theta, p.phi);
  const FramePair y = orthonormal_complement(x);
  auto im_m = [&](SpherePoint q) { return magnus_dispatch(field, q, r, fd).imag(); };
  auto re_m = [&](SpherePoint q) { return magnus_dispatch(field, q, r, fd).real(); };
  return frozen_directional(im_m, p, x.a, x.b, r, fd.step) +
         frozen_directional(re_m, p, y.a, y.b, r, fd.step);
}

double realpart_residual(const AngleField& field, SpherePoint p, double r,
                         const FdConfig& fd) {
  require_interior_theta(p.theta);
  const FramePair x = field.frame_coefficients(p.theta, p.phi);
  const FramePair y = orthonormal_complement(x);
  auto im_m = [&](SpherePoint q) { return magnus_dispatch(field, q, r, fd).imag(); };
  auto re_m = [&](SpherePoint q) { return magnus_dispatch(field, q, r, fd).real(); };
  return frozen_directional(re_m, p, x.a, x.b, r, fd.step) -
         frozen_directional(im_m, p, y.a, y.b, r, fd.step);
}

double meridian_profile(int k, double theta, double r) {
  require_positive_radius(r);
  require_interior_theta(theta);
  const double u = k + std::cos(theta);
  const double s = r * std::sin(theta);
  return u / std::sqrt(s * s + u * u);
}

std::complex<double> meridian_directional_identity(int k, double theta, double r) {
  require_positive_radius(r);
  require_interior_theta(theta);
  const double s = std::sin(theta);
  const double u = k + std::cos(theta);
  const double q = r * r * s * s + u * u;
  const double fprime = -r * r * s * (1.0 + k * std::cos(theta)) / (q * std::sqrt(q));
  const double f = u / std::sqrt(q);
  return {fprime / r - k * f / (r * s), 0.0};
}

ResidualReport residual_sweep(const AngleField& field, double r,
                              const ResidualGridSpec& grid, const FdConfig& fd) {
  require_positive_radius(r);
  if (grid.n_theta < 2 || grid.n_phi < 2)
    throw DomainError("residual grid needs at least 2x2 nodes");

  ResidualReport report;
  report.grid = grid;
  report.slit = field.slit_domain();
  report.radius = r;
  report.fd_step = fd.step;

  const double t0 = grid.theta_margin;
  const double t1 = kPi - grid.theta_margin;
  const double dt = (t1 - t0) / (grid.n_theta - 1);
  const double dp = kTwoPi / grid.n_phi;
  // Slit domains get half-cell offset phi nodes so the removed meridian and
  // its FD stencils are never touched.
  const double phi_base = report.slit ? 0.5 * dp : 0.0;

  const std::size_t total = static_cast<std::size_t>(grid.n_theta) * grid.n_phi;
  report.samples.resize(total);
  parallel_for(total, [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const int i = static_cast<int>(idx) / grid.n_phi;
      const int j = static_cast<int>(idx) % grid.n_phi;
      const SpherePoint p{t0 + i * dt, phi_base + j * dp};
      ResidualSample& s = report.samples[idx];
      s.theta = p.theta;
      s.phi = p.phi;
      s.cr = cr_residual(field, p, r, fd);
      s.el = el_residual(field, p, r, fd);
      s.realpart = realpart_residual(field, p, r, fd);
    }
  });

  auto better = [](double candidate, double best, const ResidualSample& s,
                   const SpherePoint& arg) {
    if (candidate > best) return true;
    if (candidate < best) return false;
    if (s.theta != arg.theta) return s.theta < arg.theta;
    return s.phi < arg.phi;
  };
  report.sup_cr = report.sup_el = report.sup_realpart = -1.0;
  for (const ResidualSample& s : report.samples) {
    const double acr = std::abs(s.cr);
    const double ael = std::fabs(s.el);
    const double arp = std::fabs(s.realpart);
    if (better(acr, report.sup_cr, s, report.argmax_cr)) {
      report.sup_cr = acr;
      report.argmax_cr = {s.theta, s.phi};
    }
    if (better(ael, report.sup_el, s, report.argmax_el)) {
      report.sup_el = ael;
      report.argmax_el = {s.theta, s.phi};
    }
    if (better(arp, report.sup_realpart, s, report.argmax_realpart)) {
      report.sup_realpart = arp;
      report.argmax_realpart = {s.theta, s.phi};
    }
  }
  return report;
}

}  // namespace volfield
