#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "volfield/geometry.hpp"
#include "volfield/grid_field.hpp"

namespace volfield {

// Frame angle profile zeta(phi) = k phi + phi0 + sum_n (c_n cos n phi +
// s_n sin n phi).  The Fourier tail is 2pi-periodic, so the closure
// zeta(2pi) = zeta(0) + 2 pi k holds exactly and zeta is smooth.
struct ZetaSpec {
  int winding = 0;
  double phi0 = 0.0;
  std::vector<std::pair<double, double>> fourier;  // (c_n, s_n), n = 1..N

  double value(double phi) const;
  double derivative(double phi) const;
  double perturbation_norm() const;  // l2 norm of the Fourier coefficients
};

// Circles-of-latitude field, defined off the meridian phi = 0:
// frame angle eta(theta, phi) = phi cos(theta) + phi0 drives
// a = sin(eta), b = cos(eta).  Holonomy 2pi cos(theta) obstructs extension
// across the slit.
struct LatitudeSpec {
  double phi0 = 0.0;

  double eta(double theta, double phi) const { return phi * std::cos(theta) + phi0; }
};

// Field parallel-transported along the loxodrome flow of the constant-frame
// direction T = a_T e_theta + b_T e_phi.  Initial angles are prescribed on a
// transversal by a ZetaSpec-style profile: on the equator theta = pi/2
// parameterized by phi when a_T != 0, else on the meridian phi = pi
// parameterized by theta.
struct TTypeSpec {
  double t_theta = 1.0;  // a_T
  double t_phi = 0.0;    // b_T
  ZetaSpec initial;      // angle profile along the transversal

  void validate() const;
};

enum class FieldFamily { meridian, latitude, ttype, grid };

// Frame coefficients of a unit field: X = (a/r) d_theta + (b/(r sin)) d_phi.
struct FramePair {
  double a;
  double b;
};

// (-b, a): the unique Y completing X to a direct orthonormal frame.
FramePair orthonormal_complement(FramePair x);

FramePair eval_meridian(const ZetaSpec& spec, double theta, double phi);
FramePair eval_latitude(const LatitudeSpec& spec, double theta, double phi);

struct TTypeOdeOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_steps = 200000;
};

// Integrates nabla_T X = 0 along the loxodrome through (theta, phi) back to
// the transversal, then forward to the query point.  The (a, b) pair is
// integrated as a 2-state system; its norm drift stays below 1e-9 and is
// removed by a single terminal renormalization.
FramePair eval_ttype(const TTypeSpec& spec, double theta, double phi,
                     const TTypeOdeOptions& opt = {});

// A unit vector field on the punctured sphere, tagged by family.  Frame
// coefficients are radius-independent for every family; the radius enters
// derived quantities (A-components, volume) as a parameter.
class AngleField {
 public:
  static AngleField meridian(ZetaSpec spec);
  static AngleField latitude(LatitudeSpec spec);
  static AngleField ttype(TTypeSpec spec);
  static AngleField grid(GridField field);

  FieldFamily family() const;

  // True when the domain excludes the meridian phi = 0 (latitude family):
  // evaluation then requires phi strictly inside (0, 2pi).
  bool slit_domain() const { return family() == FieldFamily::latitude; }

  FramePair frame_coefficients(double theta, double phi) const;

  // Unwrapped frame angle alpha with X = cos(alpha) e_theta + sin(alpha) e_phi.
  double angle(double theta, double phi) const;

  // Winding of the frame angle per circuit of a parallel, for families
  // defined on all of M*; nullopt for the slit latitude family.
  std::optional<int> winding() const;

  const ZetaSpec* as_meridian() const { return std::get_if<ZetaSpec>(&spec_); }
  const LatitudeSpec* as_latitude() const { return std::get_if<LatitudeSpec>(&spec_); }
  const TTypeSpec* as_ttype() const { return std::get_if<TTypeSpec>(&spec_); }
  const GridField* as_grid() const { return std::get_if<GridField>(&spec_); }

 private:
  using Spec = std::variant<ZetaSpec, LatitudeSpec, TTypeSpec, GridField>;
  explicit AngleField(Spec spec) : spec_(std::move(spec)) {}
  Spec spec_;
};

// Covariant derivative of the field along a direction given in coordinate
// components, returned in frame components:
//   nabla_V X = [v^th a'_th + v^ph (a'_ph - b cos)] e_theta
//             + [v^th b'_th + v^ph (b'_ph + a cos)] e_phi
// with the coefficient partials taken by central differences.
FrameVector covariant_derivative(const AngleField& field, SpherePoint p,
                                 CoordVector direction, const FdConfig& fd = {});

}  // namespace volfield
