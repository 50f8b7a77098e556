#pragma once

#include <vector>

#include "volfield/common.hpp"

namespace volfield {

// Unit field discretized by its unwrapped frame angle on a uniform
// (theta, phi) grid.  Rows span theta in [theta_min, theta_max]; columns span
// one full period of phi with the winding closure alpha(theta, 2pi) =
// alpha(theta, 0) + 2pi k built into the wrap column, never stored.
struct GridField {
  int n_theta = 0;
  int n_phi = 0;
  int winding = 0;
  double theta_min = kGridMargin;
  double theta_max = kPi - kGridMargin;
  std::vector<double> alpha;  // row-major, theta index outer, n_theta * n_phi

  GridField() = default;
  GridField(int nt, int np, int k, double tmin = kGridMargin,
            double tmax = kPi - kGridMargin);

  double theta_at(int i) const;
  double phi_at(int j) const;
  double dtheta() const { return (theta_max - theta_min) / (n_theta - 1); }
  double dphi() const { return kTwoPi / n_phi; }

  double& at(int i, int j) { return alpha[static_cast<std::size_t>(i) * n_phi + j]; }
  double at(int i, int j) const { return alpha[static_cast<std::size_t>(i) * n_phi + j]; }

  // Node value with the winding closure applied for j outside [0, n_phi).
  double wrapped(int i, int j) const;

  // Bilinear interpolation of the unwrapped angle; phi taken mod 2pi with the
  // winding shift, theta clamped to the grid band.
  double angle(double theta, double phi) const;

  // Fill from a callable alpha(theta, phi).
  template <class F>
  void fill(F&& f) {
    for (int i = 0; i < n_theta; ++i)
      for (int j = 0; j < n_phi; ++j) at(i, j) = f(theta_at(i), phi_at(j));
  }
};

}  // namespace volfield
