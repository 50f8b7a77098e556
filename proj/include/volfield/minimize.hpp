#pragma once

#include <cstdint>
#include <optional>

#include "volfield/grid_field.hpp"
#include "volfield/fields.hpp"
#include "volfield/quadrature.hpp"

namespace volfield {

// Objective evaluations accepted by an optimizer run, in order.  Accepted
// objectives never increase.  Wall-clock is measured but never serialized, so
// identical runs produce identical artifacts.
struct OptimizationTrace {
  std::vector<double> objectives;
  int iterations = 0;
  double terminal_measure = 0.0;  // simplex diameter or gradient norm
  double wall_seconds = 0.0;
};

// Quadrature used for the zeta-family volume; coarser than the reporting
// default since the integrand is smooth and the optimizer calls it often.
struct FamilyQuadrature {
  int theta_panels = 64;
  int phi_panels = 64;
  int points_per_panel = 4;
};

// Volume of the meridian-parallel field with profile zeta, radius 1:
//   integral sqrt(sin^2 theta + (zeta'(phi) + cos theta)^2) dtheta dphi.
// By convexity in zeta' this is minimized over each winding class by the
// constant-derivative profile, i.e. family_volume >= volume_meridian_closed(k).
double family_volume(const ZetaSpec& zeta, const FamilyQuadrature& quad = {});

struct FamilyMinimizeConfig {
  int fourier_modes = 6;
  int max_evaluations = 40000;
  int restarts = 1;
  double simplex_tol = 1e-10;   // objective spread at convergence
  double initial_scale = 0.3;   // simplex edge for the coefficient directions
  std::uint64_t seed = 2024;
  bool random_start = false;    // else start from the pure meridian profile
  std::optional<ZetaSpec> start_spec;  // explicit start, overrides random_start
  FamilyQuadrature quadrature;
};

struct FamilyMinimizeResult {
  ZetaSpec best;
  double volume = 0.0;
  OptimizationTrace trace;
  bool converged = false;  // false carries the best-so-far after budget exhaustion
};

// Derivative-free simplex descent over (phi0, c_1..c_N, s_1..s_N) at fixed
// winding k, with restarts around the incumbent.
FamilyMinimizeResult minimize_in_family(int k, const FamilyMinimizeConfig& config = {});

struct GridMinimizeConfig {
  int n_theta = 64;
  int n_phi = 64;
  double theta_margin = kGridMargin;
  int max_iterations = 4000;
  double gradient_tol = 1e-7;     // l2 norm per node
  double start_amplitude = 0.5;   // random start perturbation, radians
  std::uint64_t seed = 2024;
};

struct GridMinimizeResult {
  GridField field;
  double objective = 0.0;       // discretized volume over the theta band
  double full_estimate = 0.0;   // objective plus boundary-row pole cap estimate
  OptimizationTrace trace;
  bool converged = false;
};

// Discretized volume of the grid field at radius 1: cell-centered
//   sqrt(1 + p^2 + ((q + cos)/sin)^2) sin dtheta dphi
// with p, q the staggered differences of the angle; the phi wrap column
// carries the winding closure, so the constraint is structural.
double grid_objective(const GridField& field);

// Finite-difference gradient of grid_objective, assembled from the cells
// touching each node.  Perturbs nodes in place and restores them.
void grid_objective_gradient(GridField& field, std::vector<double>& grad);

// Extends the band objective by per-cap corrections: boundary-row integrand
// mean times the cap parameter area.  Exact for the k = 0 profile, O(margin^2)
// otherwise.
double grid_full_estimate(const GridField& field, double objective);

// Projected-free gradient descent with Barzilai-Borwein steps and monotone
// backtracking, from a seeded random perturbation of the pure meridian start.
GridMinimizeResult minimize_grid(int k, const GridMinimizeConfig& config = {});

}  // namespace volfield
