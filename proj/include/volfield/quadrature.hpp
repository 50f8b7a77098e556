#pragma once

#include <functional>
#include <string>
#include <vector>

#include "volfield/common.hpp"

namespace volfield {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int points);

enum class QuadratureRule { tensor_gauss, adaptive };

struct QuadratureSpec {
  QuadratureRule rule = QuadratureRule::tensor_gauss;
  int panels_theta = 256;
  int panels_phi = 256;
  int points_per_panel = 4;
  double tolerance = 1e-9;        // budget for the refinement disagreement check
  double boundary_cell_area = 1e-8;  // predicate regions: max unresolved cell area

  void validate() const;
};

// Integration domain in the (theta, phi) parameter rectangle.
class DomainRegion {
 public:
  enum class Kind { full, rectangle, predicate };

  static DomainRegion full();
  static DomainRegion rectangle(double theta_lo, double theta_hi, double phi_lo,
                                double phi_hi);
  static DomainRegion predicate(std::string name,
                                std::function<bool(double, double)> member,
                                double theta_lo = 0.0, double theta_hi = kPi,
                                double phi_lo = 0.0, double phi_hi = kTwoPi);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  double theta_lo() const { return theta_lo_; }
  double theta_hi() const { return theta_hi_; }
  double phi_lo() const { return phi_lo_; }
  double phi_hi() const { return phi_hi_; }
  bool contains(double theta, double phi) const;

  // Euclidean (parameter-plane) area; computed by adaptive classification for
  // predicate regions and cached.
  double euclidean_area(const QuadratureSpec& spec = {}) const;

 private:
  DomainRegion() = default;
  Kind kind_ = Kind::full;
  std::string name_ = "full";
  double theta_lo_ = 0.0, theta_hi_ = kPi;
  double phi_lo_ = 0.0, phi_hi_ = kTwoPi;
  std::function<bool(double, double)> member_;
  mutable double cached_area_ = -1.0;
};

struct Integral2dResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

// Composite tensor Gauss-Legendre over a rectangle.  The error estimate is
// the disagreement against a half-panel evaluation; disagreement beyond
// spec.tolerance * max(1, |value|) raises ConvergenceError.
Integral2dResult integrate_rectangle(const std::function<double(double, double)>& f,
                                     double theta_lo, double theta_hi,
                                     double phi_lo, double phi_hi,
                                     const QuadratureSpec& spec = {});

// Quadtree integration of f over a predicate region: interior cells by tensor
// Gauss-Legendre, boundary cells subdivided until their area drops under
// spec.boundary_cell_area and then scored by sampled coverage.  The error
// estimate accumulates the unresolved boundary mass.
Integral2dResult integrate_region(const std::function<double(double, double)>& f,
                                  const DomainRegion& region,
                                  const QuadratureSpec& spec = {});

// Composite Gauss-Legendre on an interval, fixed panel count.
double integrate_interval(const std::function<double(double)>& f, double lo,
                          double hi, int panels = 256, int points = 8);

// Neumaier compensated accumulator; summation order is the insertion order,
// so reductions stay deterministic across worker counts.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace volfield
