#pragma once

#include <vector>

#include "volfield/fields.hpp"

namespace volfield {

// Which puncture receives which of the two winding limits.  The standard
// convention assigns (1-k, 1+k) to (north, south) for the meridian family;
// flipping swaps the two assignments.  The index multiset and the sum 2 are
// convention-independent.
enum class IndexConvention { standard, flipped };

struct WindingOptions {
  int samples = 720;      // doubled on jump detection, at most 3 times
  int max_doublings = 3;
  double ode_rel_tol = 1e-10;
};

// Total angle of the field against a reference vector parallel-transported
// around the circle theta = theta_circle, divided by 2pi, measured in the
// artifact's fixed convention.  For the pure meridian field the closed-form
// value is cos(theta) - k.  Rejects fields whose domain excludes part of the
// circle.
double winding_relative_parallel(const AngleField& field, double theta_circle,
                                 const WindingOptions& opt = {});

struct IndexReport {
  int index_north = 0;
  int index_south = 0;
  int euler_sum = 0;
  IndexConvention convention = IndexConvention::standard;
  std::vector<std::pair<double, double>> winding_samples;  // (theta, winding)
};

// Pole indices from winding limits probed at theta in {0.02, 0.01, 0.005} and
// their mirror values.  All probes must round to the same integer within 0.05
// or the field does not extend continuously around the puncture.
IndexReport index_at_poles(const AngleField& field,
                           IndexConvention convention = IndexConvention::standard,
                           const WindingOptions& opt = {});

// True iff the indices sum to the Euler characteristic of the sphere.
bool poincare_hopf_check(const IndexReport& report);

}  // namespace volfield
