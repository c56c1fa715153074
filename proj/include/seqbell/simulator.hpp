#pragma once

#include <string>
#include <utility>
#include <vector>

#include "seqbell/witness.hpp"

namespace seqbell {

// Density matrix of one qubit pair (A_i, B_i); A is the first tensor factor.
struct PairState {
  CMatrix rho;        // 4x4
  int pair_index = 1; // 1 or 2
};

// Hermitian, PSD, unit trace within tol; throws.
void validate_pair_state(const PairState& state, double tol = kDefaultTol);

struct ScenarioConfig {
  int alices = 2;        // J
  int bobs = 2;          // K
  SideParameters alice;  // side 1: epsilon^(1), theta^(1), gamma^(1)_{1..J}
  SideParameters bob;    // side 2: epsilon^(2), theta^(2), gamma^(2)_{1..K}
  double visibility = 1.0;
};

void validate_config(const ScenarioConfig& config);

// Both pairs in |phi+><phi+|, kept factorized.
std::pair<PairState, PairState> initial_state();

// rho -> v rho + (1 - v) I/4 on one pair.
PairState apply_visibility(const PairState& state, double v);

// Pre-measurement states seen by (Alice^(j), Bob^(k)): the initial state with
// every earlier party replaced by its setting-averaged, outcome-summed
// channel. Channels on distinct qubits commute; within one side they compose
// in position order.
std::pair<PairState, PairState> evolve_to_pair(const ScenarioConfig& config, int j, int k);

// Born-rule joint distribution for the target pair, factorized across the two
// qubit pairs.
JointDistribution joint_distribution(const ScenarioConfig& config, int j, int k);

// Same distribution computed on the unfactorized 16x16 state; cross-check
// path only.
JointDistribution joint_distribution_reference(const ScenarioConfig& config, int j, int k);

WitnessValue simulate_S(const ScenarioConfig& config, int j, int k);

struct ComparisonCell {
  int j = 1, k = 1;
  double closed_form = 0;
  double simulated = 0;
  double delta = 0;        // simulated - closed_form
  double pair1_delta = 0;
  double pair2_delta = 0;
  std::string status;      // "forced" at (1,1), "open" elsewhere
};

struct ComparisonReport {
  std::vector<ComparisonCell> cells;  // every (j,k), k-major to match the tables
  double max_abs_deviation = 0;
};

ComparisonReport compare_closed_form(const ScenarioConfig& config);

// Visibility at which the weakest pair stops violating: bisection on
// S_v = 64 + v (S - 64) until min_{j,k} S_v reaches 96 within tol. Throws
// NoViolation when the config does not violate at v = 1.
double critical_visibility(const ScenarioConfig& config, double tol);

// Seeded trajectory sampler, statistical cross-check of joint_distribution.
// Deterministic for a given seed independent of the worker count.
struct SampledJoint {
  JointDistribution dist;               // empirical, normalized per block
  std::array<long, 16> block_trials{};  // trajectories per setting block
  long total_trials = 0;
};

SampledJoint sample_joint(const ScenarioConfig& config, int j, int k, long trials,
                          unsigned long long seed);

}  // namespace seqbell
