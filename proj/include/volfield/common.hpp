#pragma once

#include <stdexcept>
#include <string>

namespace volfield {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Pointwise geometry rejects colatitudes outside [kPoleGuard, pi - kPoleGuard].
// Integrals over closures are handled by the quadrature layer, whose closed-form
// integrands extend continuously to the poles.
inline constexpr double kPoleGuard = 1e-9;

// Default interior margin for residual sampling grids: cot(theta)-type
// quantities grow near the punctures, so sup norms are always reported
// together with the grid they were taken on.
inline constexpr double kGridMargin = 0.05;

struct SpherePoint {
  double theta;  // colatitude, radians, interior of (0, pi)
  double phi;    // longitude, radians
};

// A point left the admissible chart domain: pole band, slit meridian,
// or non-unit frame data.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative scheme exhausted its tolerance or step budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Central-difference configuration. One Richardson level is applied where a
// scheme declares it; residual operators use plain second-order differences.
struct FdConfig {
  double step = 1e-5;
  bool richardson = true;
};

inline void require_interior_theta(double theta, double guard = kPoleGuard) {
  if (!(theta >= guard && theta <= kPi - guard)) {
    throw DomainError("colatitude " + std::to_string(theta) +
                      " outside interior band [" + std::to_string(guard) +
                      ", pi - " + std::to_string(guard) + "]");
  }
}

inline void require_positive_radius(double r) {
  if (!(r > 0.0)) {
    throw DomainError("sphere radius must be positive");
  }
}

}  // namespace volfield
