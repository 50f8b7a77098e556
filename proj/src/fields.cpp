#include "volfield/fields.hpp"

#include <cmath>

#include "volfield/ode.hpp"

namespace volfield {

double ZetaSpec::value(double phi) const {
  double z = winding * phi + phi0;
  for (std::size_t n = 0; n < fourier.size(); ++n) {
    const double w = (n + 1) * phi;
    z += fourier[n].first * std::cos(w) + fourier[n].second * std::sin(w);
  }
  return z;
}

double ZetaSpec::derivative(double phi) const {
  double d = winding;
  for (std::size_t n = 0; n < fourier.size(); ++n) {
    const double m = static_cast<double>(n + 1);
    const double w = m * phi;
    d += m * (-fourier[n].first * std::sin(w) + fourier[n].second * std::cos(w));
  }
  return d;
}

double ZetaSpec::perturbation_norm() const {
  double q = 0.0;
  for (const auto& [c, s] : fourier) q += c * c + s * s;
  return std::sqrt(q);
}

void TTypeSpec::validate() const {
  const double n = t_theta * t_theta + t_phi * t_phi;
  if (std::fabs(n - 1.0) > 1e-9)
    throw DomainError("T-type direction must lie on the unit circle");
}

FramePair orthonormal_complement(FramePair x) {
  if (std::fabs(x.a * x.a + x.b * x.b - 1.0) > 1e-9)
    throw DomainError("orthonormal complement requires unit frame coefficients");
  return {-x.b, x.a};
}

FramePair eval_meridian(const ZetaSpec& spec, double theta, double phi) {
  require_interior_theta(theta);
  const double z = spec.value(phi);
  return {std::cos(z), std::sin(z)};
}

FramePair eval_latitude(const LatitudeSpec& spec, double theta, double phi) {
  require_interior_theta(theta);
  if (!(phi > 0.0 && phi < kTwoPi))
    throw DomainError("latitude field is defined on the slit domain phi in (0, 2pi)");
  const double e = spec.eta(theta, phi);
  return {std::sin(e), std::cos(e)};
}

namespace {

// Loxodrome-flow state (theta, phi, a, b) for unit T = a_T e_theta + b_T e_phi:
//   theta' = a_T,  phi' = b_T / sin(theta),
//   a' = b cos(theta) phi',  b' = -a cos(theta) phi'
// (arc length scaled by r drops out of the transported angles).
struct TransportRhs {
  double t_theta;
  double t_phi;

  std::array<double, 4> operator()(double, const std::array<double, 4>& y) const {
    const double s = std::sin(y[0]);
    const double c = std::cos(y[0]);
    const double phidot = t_phi / s;
    return {t_theta, phidot, y[3] * c * phidot, -y[2] * c * phidot};
  }
};

}  // namespace

FramePair eval_ttype(const TTypeSpec& spec, double theta, double phi,
                     const TTypeOdeOptions& opt) {
  spec.validate();
  require_interior_theta(theta);

  double theta_start, phi_start, span, init_param;
  if (spec.t_theta != 0.0) {
    // Equator transversal: the loxodrome through (theta, phi) is a straight
    // line in the Mercator chart, phi = phi_start + (b_T/a_T) x.
    theta_start = 0.5 * kPi;
    phi_start = phi - (spec.t_phi / spec.t_theta) * mercator_x(theta);
    span = (theta - theta_start) / spec.t_theta;
    init_param = phi_start;
  } else {
    // Pure parallel flow: transversal is the meridian phi = pi, parameterized
    // by theta.
    theta_start = theta;
    phi_start = kPi;
    span = std::sin(theta) * (phi - phi_start) / spec.t_phi;
    init_param = theta;
  }

  const double alpha0 = spec.initial.value(init_param);
  std::array<double, 4> y = {theta_start, phi_start, std::cos(alpha0),
                             std::sin(alpha0)};
  if (span != 0.0) {
    OdeOptions ode{opt.rel_tol, opt.abs_tol, opt.max_steps};
    try {
      y = integrate_rk45<4>(TransportRhs{spec.t_theta, spec.t_phi}, y, 0.0, span, ode);
    } catch (const ConvergenceError&) {
      throw ConvergenceError("loxodrome flow failed to reach the query point");
    }
  }
  if (!(y[0] >= kPoleGuard && y[0] <= kPi - kPoleGuard))
    throw DomainError("loxodrome left the guarded chart band");

  const double norm = std::sqrt(y[2] * y[2] + y[3] * y[3]);
  if (std::fabs(norm - 1.0) > 1e-9)
    throw ConvergenceError("parallel transport norm drift exceeded 1e-9");
  return {y[2] / norm, y[3] / norm};
}

AngleField AngleField::meridian(ZetaSpec spec) { return AngleField(Spec(std::move(spec))); }
AngleField AngleField::latitude(LatitudeSpec spec) { return AngleField(Spec(spec)); }
AngleField AngleField::ttype(TTypeSpec spec) {
  spec.validate();
  return AngleField(Spec(std::move(spec)));
}
AngleField AngleField::grid(GridField field) { return AngleField(Spec(std::move(field))); }

FieldFamily AngleField::family() const {
  switch (spec_.index()) {
    case 0: return FieldFamily::meridian;
    case 1: return FieldFamily::latitude;
    case 2: return FieldFamily::ttype;
    default: return FieldFamily::grid;
  }
}

FramePair AngleField::frame_coefficients(double theta, double phi) const {
  switch (family()) {
    case FieldFamily::meridian:
      return eval_meridian(*as_meridian(), theta, phi);
    case FieldFamily::latitude:
      return eval_latitude(*as_latitude(), theta, phi);
    case FieldFamily::ttype:
      return eval_ttype(*as_ttype(), theta, phi);
    default: {
      require_interior_theta(theta);
      const double alpha = as_grid()->angle(theta, phi);
      return {std::cos(alpha), std::sin(alpha)};
    }
  }
}

double AngleField::angle(double theta, double phi) const {
  switch (family()) {
    case FieldFamily::meridian:
      require_interior_theta(theta);
      return as_meridian()->value(phi);
    case FieldFamily::latitude: {
      require_interior_theta(theta);
      if (!(phi > 0.0 && phi < kTwoPi))
        throw DomainError("latitude field is defined on the slit domain phi in (0, 2pi)");
      // a = sin(eta) = cos(pi/2 - eta), b = cos(eta) = sin(pi/2 - eta)
      return 0.5 * kPi - as_latitude()->eta(theta, phi);
    }
    case FieldFamily::ttype: {
      const FramePair fc = frame_coefficients(theta, phi);
      return std::atan2(fc.b, fc.a);
    }
    default:
      require_interior_theta(theta);
      return as_grid()->angle(theta, phi);
  }
}

std::optional<int> AngleField::winding() const {
  switch (family()) {
    case FieldFamily::meridian: return as_meridian()->winding;
    case FieldFamily::latitude: return std::nullopt;
    case FieldFamily::ttype: return as_ttype()->initial.winding;
    default: return as_grid()->winding;
  }
}

FrameVector covariant_derivative(const AngleField& field, SpherePoint p,
                                 CoordVector direction, const FdConfig& fd) {
  require_interior_theta(p.theta);
  auto a_of = [&](double th, double ph) { return field.frame_coefficients(th, ph).a; };
  auto b_of = [&](double th, double ph) { return field.frame_coefficients(th, ph).b; };

  const double a_th = central_derivative([&](double t) { return a_of(t, p.phi); }, p.theta, fd);
  const double b_th = central_derivative([&](double t) { return b_of(t, p.phi); }, p.theta, fd);
  const double a_ph = central_derivative([&](double f) { return a_of(p.theta, f); }, p.phi, fd);
  const double b_ph = central_derivative([&](double f) { return b_of(p.theta, f); }, p.phi, fd);

  const FramePair x = field.frame_coefficients(p.theta, p.phi);
  const double c = std::cos(p.theta);
  return {direction.d_theta * a_th + direction.d_phi * (a_ph - x.b * c),
          direction.d_theta * b_th + direction.d_phi * (b_ph + x.a * c)};
}

}  // namespace volfield
