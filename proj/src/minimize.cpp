#include "volfield/minimize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace volfield {

double family_volume(const ZetaSpec& zeta, const FamilyQuadrature& quad) {
  const GaussRule& rule = gauss_legendre(quad.points_per_panel);
  const int q = static_cast<int>(rule.nodes.size());

  // Precompute theta nodes/weights once; zeta' is evaluated per phi node only.
  const double ht = kPi / quad.theta_panels;
  const double hp = kTwoPi / quad.phi_panels;
  std::vector<double> sin2, cosv, wt;
  sin2.reserve(quad.theta_panels * q);
  cosv.reserve(quad.theta_panels * q);
  wt.reserve(quad.theta_panels * q);
  for (int i = 0; i < quad.theta_panels; ++i) {
    for (int a = 0; a < q; ++a) {
      const double theta = i * ht + 0.5 * ht * (rule.nodes[a] + 1.0);
      const double s = std::sin(theta);
      sin2.push_back(s * s);
      cosv.push_back(std::cos(theta));
      wt.push_back(rule.weights[a] * 0.5 * ht);
    }
  }

  CompensatedSum total;
  for (int j = 0; j < quad.phi_panels; ++j) {
    for (int b = 0; b < q; ++b) {
      const double phi = j * hp + 0.5 * hp * (rule.nodes[b] + 1.0);
      const double zp = zeta.derivative(phi);
      const double wp = rule.weights[b] * 0.5 * hp;
      CompensatedSum column;
      for (std::size_t n = 0; n < sin2.size(); ++n) {
        const double u = zp + cosv[n];
        column.add(wt[n] * std::sqrt(sin2[n] + u * u));
      }
      total.add(wp * column.value());
    }
  }
  return total.value();
}

namespace {

ZetaSpec params_to_spec(int k, const std::vector<double>& x) {
  ZetaSpec spec;
  spec.winding = k;
  spec.phi0 = x[0];
  const std::size_t modes = (x.size() - 1) / 2;
  spec.fourier.resize(modes);
  for (std::size_t n = 0; n < modes; ++n)
    spec.fourier[n] = {x[1 + 2 * n], x[2 + 2 * n]};
  return spec;
}

struct Simplex {
  std::vector<std::vector<double>> points;
  std::vector<double> values;
};

}  // namespace

FamilyMinimizeResult minimize_in_family(int k, const FamilyMinimizeConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();
  const int dim = 1 + 2 * config.fourier_modes;

  int evaluations = 0;
  FamilyMinimizeResult result;
  auto objective = [&](const std::vector<double>& x) {
    ++evaluations;
    return family_volume(params_to_spec(k, x), config.quadrature);
  };

  std::mt19937_64 rng(config.seed);
  std::vector<double> start(dim, 0.0);
  if (config.start_spec) {
    start[0] = config.start_spec->phi0;
    for (std::size_t n = 0; n < config.start_spec->fourier.size() &&
                            n < static_cast<std::size_t>(config.fourier_modes);
         ++n) {
      start[1 + 2 * n] = config.start_spec->fourier[n].first;
      start[2 + 2 * n] = config.start_spec->fourier[n].second;
    }
  } else if (config.random_start) {
    std::uniform_real_distribution<double> coeff(-config.initial_scale,
                                                 config.initial_scale);
    for (double& v : start) v = coeff(rng);
  }

  // Nelder-Mead with standard coefficients and shrink; restarted around the
  // incumbent with a reduced edge.
  auto run_simplex = [&](std::vector<double> origin, double edge,
                         OptimizationTrace& trace) {
    Simplex s;
    s.points.push_back(origin);
    for (int d = 0; d < dim; ++d) {
      std::vector<double> p = origin;
      p[d] += edge;
      s.points.push_back(p);
    }
    s.values.resize(s.points.size());
    for (std::size_t i = 0; i < s.points.size(); ++i) s.values[i] = objective(s.points[i]);

    std::vector<std::size_t> order(s.points.size());
    double best_recorded = std::numeric_limits<double>::infinity();
    while (evaluations < config.max_evaluations) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
      const std::size_t best = order.front();
      const std::size_t worst = order.back();
      const std::size_t second_worst = order[order.size() - 2];

      if (s.values[best] < best_recorded - 1e-15) {
        best_recorded = s.values[best];
        trace.objectives.push_back(best_recorded);
      }
      ++trace.iterations;

      const double spread = s.values[worst] - s.values[best];
      if (spread < config.simplex_tol * std::max(1.0, std::fabs(s.values[best]))) {
        trace.terminal_measure = spread;
        return std::make_pair(s.points[best], s.values[best]);
      }

      std::vector<double> centroid(dim, 0.0);
      for (std::size_t i : order)
        if (i != worst)
          for (int d = 0; d < dim; ++d) centroid[d] += s.points[i][d];
      for (double& c : centroid) c /= (s.points.size() - 1);

      auto blend = [&](double t) {
        std::vector<double> p(dim);
        for (int d = 0; d < dim; ++d)
          p[d] = centroid[d] + t * (s.points[worst][d] - centroid[d]);
        return p;
      };

      const std::vector<double> reflected = blend(-1.0);
      const double fr = objective(reflected);
      if (fr < s.values[best]) {
        const std::vector<double> expanded = blend(-2.0);
        const double fe = objective(expanded);
        if (fe < fr) {
          s.points[worst] = expanded;
          s.values[worst] = fe;
        } else {
          s.points[worst] = reflected;
          s.values[worst] = fr;
        }
        continue;
      }
      if (fr < s.values[second_worst]) {
        s.points[worst] = reflected;
        s.values[worst] = fr;
        continue;
      }
      const std::vector<double> contracted = blend(fr < s.values[worst] ? -0.5 : 0.5);
      const double fc = objective(contracted);
      if (fc < std::min(fr, s.values[worst])) {
        s.points[worst] = contracted;
        s.values[worst] = fc;
        continue;
      }
      for (std::size_t i : order) {
        if (i == best) continue;
        for (int d = 0; d < dim; ++d)
          s.points[i][d] = 0.5 * (s.points[i][d] + s.points[best][d]);
        s.values[i] = objective(s.points[i]);
      }
    }
    // Budget exhausted: hand back the current best.
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
    trace.terminal_measure = s.values[order.back()] - s.values[order.front()];
    return std::make_pair(s.points[order.front()], s.values[order.front()]);
  };

  std::vector<double> incumbent = start;
  double incumbent_value = std::numeric_limits<double>::infinity();
  double edge = config.initial_scale;
  for (int round = 0; round <= config.restarts; ++round) {
    auto [point, value] = run_simplex(incumbent, edge, result.trace);
    if (value < incumbent_value) {
      incumbent = point;
      incumbent_value = value;
    }
    edge *= 0.1;
    if (evaluations >= config.max_evaluations) break;
  }

  result.best = params_to_spec(k, incumbent);
  result.volume = incumbent_value;
  result.converged = evaluations < config.max_evaluations;
  result.trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return result;
}

namespace {

// Cell-centered integrand of the discretized functional.
struct GridGeometry {
  std::vector<double> sin_c;   // sin at cell-center thetas
  std::vector<double> cos_c;
  double dtheta;
  double dphi;

  explicit GridGeometry(const GridField& g) : dtheta(g.dtheta()), dphi(g.dphi()) {
    sin_c.resize(g.n_theta - 1);
    cos_c.resize(g.n_theta - 1);
    for (int i = 0; i + 1 < g.n_theta; ++i) {
      const double theta = 0.5 * (g.theta_at(i) + g.theta_at(i + 1));
      sin_c[i] = std::sin(theta);
      cos_c[i] = std::cos(theta);
    }
  }
};

double cell_value(const GridField& g, const GridGeometry& geo, int i, int j) {
  const double v00 = g.at(i, j);
  const double v10 = g.at(i + 1, j);
  const int jn = (j + 1 == g.n_phi) ? 0 : j + 1;
  const double shift = (j + 1 == g.n_phi) ? kTwoPi * g.winding : 0.0;
  const double v01 = g.at(i, jn) + shift;
  const double v11 = g.at(i + 1, jn) + shift;

  const double p = (v10 + v11 - v00 - v01) / (2.0 * geo.dtheta);
  const double q = (v01 + v11 - v00 - v10) / (2.0 * geo.dphi);
  const double s = geo.sin_c[i];
  const double w = (q + geo.cos_c[i]) / s;
  return std::sqrt(1.0 + p * p + w * w) * s * geo.dtheta * geo.dphi;
}

}  // namespace

double grid_objective(const GridField& field) {
  const GridGeometry geo(field);
  CompensatedSum sum;
  for (int i = 0; i + 1 < field.n_theta; ++i)
    for (int j = 0; j < field.n_phi; ++j) sum.add(cell_value(field, geo, i, j));
  return sum.value();
}

void grid_objective_gradient(GridField& field, std::vector<double>& grad) {
  const GridGeometry geo(field);
  const std::size_t n = field.alpha.size();
  grad.assign(n, 0.0);

  // Central difference on the local cell stencil: node (i, j) touches cells
  // (i-1..i, j-1..j) with phi wrap, so each partial needs eight cell values.
  constexpr double h = 1e-6;
  for (int i = 0; i < field.n_theta; ++i) {
    for (int j = 0; j < field.n_phi; ++j) {
      const int jm = (j == 0) ? field.n_phi - 1 : j - 1;
      double local_plus = 0.0, local_minus = 0.0;
      double& node = field.at(i, j);
      const double saved = node;

      for (int sgn = 0; sgn < 2; ++sgn) {
        node = saved + (sgn == 0 ? h : -h);
        double acc = 0.0;
        if (i > 0) {
          acc += cell_value(field, geo, i - 1, j);
          acc += cell_value(field, geo, i - 1, jm);
        }
        if (i + 1 < field.n_theta) {
          acc += cell_value(field, geo, i, j);
          acc += cell_value(field, geo, i, jm);
        }
        (sgn == 0 ? local_plus : local_minus) = acc;
      }
      node = saved;
      grad[static_cast<std::size_t>(i) * field.n_phi + j] =
          (local_plus - local_minus) / (2.0 * h);
    }
  }
}

double grid_full_estimate(const GridField& field, double objective) {
  const GridGeometry geo(field);
  // Mean integrand density (per unit parameter area) along each boundary row
  // of cells, times the excluded cap area [0, theta_min] x [0, 2pi].
  auto row_density = [&](int i) {
    CompensatedSum sum;
    for (int j = 0; j < field.n_phi; ++j) sum.add(cell_value(field, geo, i, j));
    return sum.value() / (geo.dtheta * geo.dphi * field.n_phi);
  };
  const double cap_north = kTwoPi * field.theta_min * row_density(0);
  const double cap_south =
      kTwoPi * (kPi - field.theta_max) * row_density(field.n_theta - 2);
  return objective + cap_north + cap_south;
}

GridMinimizeResult minimize_grid(int k, const GridMinimizeConfig& config) {
  if (config.n_theta < 32 || config.n_phi < 32)
    throw DomainError("grid minimizer needs at least a 32x32 grid");
  const auto t_start = std::chrono::steady_clock::now();

  GridMinimizeResult result;
  GridField& g = result.field;
  g = GridField(config.n_theta, config.n_phi, k, config.theta_margin,
                kPi - config.theta_margin);

  // Seeded start: pure meridian profile plus a smooth random perturbation that
  // respects the winding closure (Fourier modes in phi, polynomial in theta).
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int modes = 3;
  std::vector<double> cs(modes * 4);
  for (double& v : cs) v = config.start_amplitude * unit(rng);
  g.fill([&](double theta, double phi) {
    const double t = (theta - g.theta_min) / (g.theta_max - g.theta_min);
    double a = k * phi;
    for (int m = 1; m <= modes; ++m) {
      const double base = cs[4 * (m - 1)] * std::cos(m * phi) +
                          cs[4 * (m - 1) + 1] * std::sin(m * phi);
      const double sloped = cs[4 * (m - 1) + 2] * std::cos(m * phi) +
                            cs[4 * (m - 1) + 3] * std::sin(m * phi);
      a += base + sloped * t * (1.0 - t) * 4.0;
    }
    return a;
  });

  double value = grid_objective(g);
  result.trace.objectives.push_back(value);

  std::vector<double> grad, prev_grad, prev_alpha;
  grid_objective_gradient(g, grad);

  double step = 1e-2;
  const std::size_t n = g.alpha.size();
  prev_alpha = g.alpha;
  prev_grad = grad;
  int stalled = 0;

  for (int it = 0; it < config.max_iterations; ++it) {
    ++result.trace.iterations;

    double gnorm2 = 0.0;
    for (double v : grad) gnorm2 += v * v;
    const double gnorm = std::sqrt(gnorm2 / n);
    result.trace.terminal_measure = gnorm;
    if (gnorm < config.gradient_tol || stalled >= 25) {
      result.converged = true;
      break;
    }

    if (it > 0) {
      // Barzilai-Borwein step from the last accepted move.
      double sy = 0.0, yy = 0.0;
      for (std::size_t idx = 0; idx < n; ++idx) {
        const double s = g.alpha[idx] - prev_alpha[idx];
        const double y = grad[idx] - prev_grad[idx];
        sy += s * y;
        yy += y * y;
      }
      if (sy > 0.0 && yy > 0.0) step = std::min(10.0, std::max(1e-6, sy / yy));
    }
    prev_alpha = g.alpha;
    prev_grad = grad;

    // Monotone backtracking from the BB step.
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      for (std::size_t idx = 0; idx < n; ++idx)
        g.alpha[idx] = prev_alpha[idx] - step * grad[idx];
      const double trial = grid_objective(g);
      if (trial < value) {
        stalled = (value - trial < 1e-11 * std::fabs(value)) ? stalled + 1 : 0;
        value = trial;
        result.trace.objectives.push_back(value);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      g.alpha = prev_alpha;
      result.converged = true;  // no descent direction at working precision
      break;
    }
    grid_objective_gradient(g, grad);
  }

  result.objective = value;
  result.full_estimate = grid_full_estimate(g, value);
  result.trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return result;
}

}  // namespace volfield
