#include "volfield/topology.hpp"

#include <cmath>

#include "volfield/ode.hpp"

namespace volfield {

namespace {

// Unwrapped angle change along the circle for (a) the field and (b) a
// reference vector parallel-transported by the connection ODE
//   a' = b cos(theta) , b' = -a cos(theta)   (phi parameter).
struct CircleSweep {
  double field_delta;
  double transport_delta;
};

CircleSweep sweep_circle(const AngleField& field, double theta, int samples,
                         double ode_rel_tol) {
  const double dphi = kTwoPi / samples;

  double field_prev = std::atan2(field.frame_coefficients(theta, 0.0).b,
                                 field.frame_coefficients(theta, 0.0).a);
  double field_total = 0.0;

  std::array<double, 2> ref = {1.0, 0.0};
  double ref_prev = 0.0;
  double ref_total = 0.0;

  OdeOptions opt;
  opt.rel_tol = ode_rel_tol;
  const double c = std::cos(theta);
  auto rhs = [c](double, const std::array<double, 2>& y) {
    return std::array<double, 2>{y[1] * c, -y[0] * c};
  };

  for (int j = 1; j <= samples; ++j) {
    const double phi = j * dphi;
    const FramePair fc = field.frame_coefficients(theta, phi);
    const double fa = std::atan2(fc.b, fc.a);
    double dfield = fa - field_prev;
    while (dfield > kPi) dfield -= kTwoPi;
    while (dfield < -kPi) dfield += kTwoPi;
    if (std::fabs(dfield) > 0.5 * kPi) throw ConvergenceError("winding unwrap jump");
    field_total += dfield;
    field_prev = fa;

    ref = integrate_rk45<2>(rhs, ref, (j - 1) * dphi, phi, opt);
    const double ra = std::atan2(ref[1], ref[0]);
    double dref = ra - ref_prev;
    while (dref > kPi) dref -= kTwoPi;
    while (dref < -kPi) dref += kTwoPi;
    ref_total += dref;
    ref_prev = ra;
  }
  return {field_total, ref_total};
}

}  // namespace

double winding_relative_parallel(const AngleField& field, double theta_circle,
                                 const WindingOptions& opt) {
  require_interior_theta(theta_circle);
  if (field.slit_domain())
    throw DomainError("winding needs the full circle; this field has a meridian removed");

  int samples = opt.samples;
  for (int attempt = 0; attempt <= opt.max_doublings; ++attempt) {
    try {
      const CircleSweep sweep =
          sweep_circle(field, theta_circle, samples, opt.ode_rel_tol);
      return -(sweep.field_delta + sweep.transport_delta) / kTwoPi;
    } catch (const ConvergenceError&) {
      if (attempt == opt.max_doublings) throw;
      samples *= 2;
    }
  }
  throw ConvergenceError("winding unwrap failed");  // unreachable
}

IndexReport index_at_poles(const AngleField& field, IndexConvention convention,
                           const WindingOptions& opt) {
  static constexpr double kProbes[] = {0.02, 0.01, 0.005};
  static constexpr double kRoundTol = 0.05;

  IndexReport report;
  report.convention = convention;

  auto probe_limit = [&](bool north) {
    int rounded = 0;
    bool first = true;
    for (double eps : kProbes) {
      const double theta = north ? eps : kPi - eps;
      const double w = winding_relative_parallel(field, theta, opt);
      report.winding_samples.emplace_back(theta, w);
      const int r = static_cast<int>(std::lround(w));
      if (std::fabs(w - r) > kRoundTol)
        throw ConvergenceError("winding limit is not integral near a puncture");
      if (first) {
        rounded = r;
        first = false;
      } else if (r != rounded) {
        throw ConvergenceError("winding probes disagree near a puncture");
      }
    }
    return rounded;
  };

  const int north_limit = probe_limit(true);
  const int south_limit = probe_limit(false);
  // Boundary orientation of a small disk around the south pole opposes the
  // traversal direction, hence the sign.
  const int index_n = north_limit;
  const int index_s = -south_limit;
  if (convention == IndexConvention::standard) {
    report.index_north = index_n;
    report.index_south = index_s;
  } else {
    report.index_north = index_s;
    report.index_south = index_n;
  }
  report.euler_sum = report.index_north + report.index_south;
  return report;
}

bool poincare_hopf_check(const IndexReport& report) { return report.euler_sum == 2; }

}  // namespace volfield
