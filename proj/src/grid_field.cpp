#include "volfield/grid_field.hpp"

#include <cmath>

namespace volfield {

GridField::GridField(int nt, int np, int k, double tmin, double tmax)
    : n_theta(nt), n_phi(np), winding(k), theta_min(tmin), theta_max(tmax) {
  if (nt < 2 || np < 4) throw DomainError("grid field needs at least 2x4 nodes");
  if (!(tmin > 0.0 && tmax < kPi && tmin < tmax))
    throw DomainError("grid theta band must be interior to (0, pi)");
  alpha.assign(static_cast<std::size_t>(nt) * np, 0.0);
}

double GridField::theta_at(int i) const { return theta_min + i * dtheta(); }

double GridField::phi_at(int j) const { return j * dphi(); }

double GridField::wrapped(int i, int j) const {
  int wraps = 0;
  while (j >= n_phi) {
    j -= n_phi;
    ++wraps;
  }
  while (j < 0) {
    j += n_phi;
    --wraps;
  }
  return at(i, j) + kTwoPi * winding * wraps;
}

double GridField::angle(double theta, double phi) const {
  double t = theta;
  if (t < theta_min) t = theta_min;
  if (t > theta_max) t = theta_max;
  const double fi = (t - theta_min) / dtheta();
  int i = static_cast<int>(std::floor(fi));
  if (i > n_theta - 2) i = n_theta - 2;
  const double wi = fi - i;

  double shift = 0.0;
  double p = phi;
  while (p >= kTwoPi) {
    p -= kTwoPi;
    shift += kTwoPi * winding;
  }
  while (p < 0.0) {
    p += kTwoPi;
    shift -= kTwoPi * winding;
  }
  const double fj = p / dphi();
  int j = static_cast<int>(std::floor(fj));
  if (j > n_phi - 1) j = n_phi - 1;
  const double wj = fj - j;

  const double v00 = wrapped(i, j);
  const double v01 = wrapped(i, j + 1);
  const double v10 = wrapped(i + 1, j);
  const double v11 = wrapped(i + 1, j + 1);
  return shift + (1.0 - wi) * ((1.0 - wj) * v00 + wj * v01) +
         wi * ((1.0 - wj) * v10 + wj * v11);
}

}  // namespace volfield
