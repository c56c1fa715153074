#pragma once

#include <vector>

#include "seqbell/witness.hpp"

namespace seqbell {

// What "largest violations" maximizes. Min-over-pairs is the default; the
// others are exploratory.
enum class Objective { MinPair, MeanPair, FirstPair };

struct OptimizationResult {
  double epsilon = 0, theta = 0;    // side 1 (equal to side 2 when symmetric)
  double epsilon2 = 0, theta2 = 0;
  bool symmetric = true;
  double min_S = 0;                 // min over the table, whatever the objective
  int argmin_j = 1, argmin_k = 1;
  std::vector<std::vector<double>> table;  // [k-1][j-1], Bobs as rows
  long iterations = 0;              // objective evaluations spent
};

// Min over all (j,k) of the closed form with symmetric sides, or -inf when the
// gamma sequence is not fully feasible up to max(J, K).
double objective_min_S(double epsilon, double theta, int J, int K);

// Coarse grid over (0,2] x (0, pi/4] followed by Nelder-Mead refinement from
// the best cells. Deterministic given (seed, budget). Throws NoFeasiblePoint
// when the whole grid is infeasible.
OptimizationResult optimize_symmetric(int J, int K, long budget, unsigned long long seed,
                                      int grid = 200, Objective objective = Objective::MinPair);

// Four-parameter (epsilon1, theta1, epsilon2, theta2) variant, refined from
// the symmetric optimum.
OptimizationResult optimize_asymmetric(int J, int K, long budget, unsigned long long seed,
                                       int grid = 200, Objective objective = Objective::MinPair);

}  // namespace seqbell
