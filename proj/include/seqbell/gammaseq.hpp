#pragma once

#include <optional>
#include <vector>

#include "seqbell/errors.hpp"

namespace seqbell {

// Sharpness sequence gamma_1..gamma_n generated by the (epsilon, theta)
// recursion. An entry is either a value in (0,1) or the infeasible sentinel
// (nullopt); once an entry is infeasible every later one is too.
struct GammaSequence {
  double epsilon = 0;
  double theta = 0;
  std::vector<std::optional<double>> values;
  int feasible_count = 0;  // length of the finite prefix

  bool fully_feasible() const { return feasible_count == static_cast<int>(values.size()); }
  std::vector<double> feasible_prefix() const;
};

// gamma_1 = (1 + epsilon) (1 - cos theta) / sin theta
double gamma_first(double epsilon, double theta);

// gamma_j = (1 + epsilon) [2^{j-1} - cos theta * prod_{g<j}(1 + sqrt(1 - gamma_g^2))] / sin theta
// while the previous entry stays in (0,1); infeasible afterwards.
GammaSequence gamma_sequence(double epsilon, double theta, int n);

// Largest theta on the descending uniform grid over (0, pi/4] (grid_size
// points) whose sequence is fully feasible up to n. Throws NotFound when the
// grid has no such point.
double find_feasible_theta(double epsilon, int n, int grid_size);

// Diagnostic for the empirical monotonicity of feasibility in theta: number of
// grid points below the returned feasible theta that are themselves
// infeasible. Reported, never asserted.
int feasibility_monotonicity_violations(double epsilon, int n, int grid_size);

}  // namespace seqbell
