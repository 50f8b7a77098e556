#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "volfield/common.hpp"

namespace volfield {

struct OdeOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_steps = 200000;
};

// Dormand-Prince 5(4) embedded Runge-Kutta with PI step control.
// Integrates y' = f(t, y) from t0 to t1 (either direction) and returns y(t1).
template <std::size_t N, class F>
std::array<double, N> integrate_rk45(F&& f, std::array<double, N> y, double t0,
                                     double t1, const OdeOptions& opt = {}) {
  using State = std::array<double, N>;
  if (t0 == t1) return y;

  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // 5th-order minus embedded 4th-order weights (error estimator).
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double dir = (t1 > t0) ? 1.0 : -1.0;
  const double span = std::fabs(t1 - t0);
  double t = t0;
  double h = dir * span / 100.0;

  State k1 = f(t, y);
  double prev_err = 1.0;

  for (int step = 0; step < opt.max_steps; ++step) {
    if (dir * (t + h - t1) > 0.0) h = t1 - t;

    State k2, k3, k4, k5, k6, k7, yt;
    for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * a21 * k1[i];
    k2 = f(t + c2 * h, yt);
    for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = f(t + c3 * h, yt);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = f(t + c4 * h, yt);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = f(t + c5 * h, yt);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                          a65 * k5[i]);
    k6 = f(t + h, yt);

    State y5;
    for (std::size_t i = 0; i < N; ++i)
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                          b6 * k6[i]);
    k7 = f(t + h, y5);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                             e6 * k6[i] + e7 * k7[i]);
      const double scale =
          opt.abs_tol + opt.rel_tol * std::max(std::fabs(y[i]), std::fabs(y5[i]));
      const double r = ei / scale;
      err += r * r;
    }
    err = std::sqrt(err / N);

    if (err <= 1.0) {
      t += h;
      y = y5;
      k1 = k7;  // FSAL
      if (t == t1 || std::fabs(t - t1) < 1e-15 * span) return y;
      const double grow =
          0.9 * std::pow(err > 1e-14 ? err : 1e-14, -0.7 / 5.0) *
          std::pow(prev_err > 1e-14 ? prev_err : 1e-14, 0.4 / 5.0);
      h *= std::min(5.0, std::max(0.2, grow));
      prev_err = err;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -1.0 / 5.0));
    }
    if (std::fabs(h) < 1e-16 * span) {
      throw ConvergenceError("ode step size underflow");
    }
  }
  throw ConvergenceError("ode integration exceeded step budget");
}

}  // namespace volfield
