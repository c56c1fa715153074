#pragma once

#include <array>
#include <utility>

#include "seqbell/measurements.hpp"

namespace seqbell {

// Names one observable of the witness sum: party's qubit index i, own setting
// r (Alice) / s (Bob), and the bookkeeping labels from the party's other
// qubit, outcome t/u under setting v/w.
struct ObservableLabel {
  Role party = Role::Alice;
  int position = 1;
  int qubit = 1;          // i in {1, 2}
  int own_setting = 0;    // r or s
  int other_outcome = 0;  // t or u
  int other_setting = 0;  // v or w
};

struct WitnessValue {
  double S = 0;
  double pair1_term = 0;  // i = 1 contribution minus 32
  double pair2_term = 0;  // i = 2 contribution minus 32
  double baseline = 64;   // 128 terms x 1/2
};

// P(p,q,p',q' | m,n,m',n') for one (Alice, Bob) pair: 16 setting blocks of 16
// outcome probabilities.
class JointDistribution {
 public:
  static constexpr int setting_index(int m, int n, int mp, int np) {
    return m * 8 + n * 4 + mp * 2 + np;
  }
  static constexpr int outcome_index(int p, int q, int pp, int qq) {
    return p * 8 + q * 4 + pp * 2 + qq;
  }

  double& prob(int m, int n, int mp, int np, int p, int q, int pp, int qq) {
    return table_[setting_index(m, n, mp, np) * 16 + outcome_index(p, q, pp, qq)];
  }
  double prob(int m, int n, int mp, int np, int p, int q, int pp, int qq) const {
    return table_[setting_index(m, n, mp, np) * 16 + outcome_index(p, q, pp, qq)];
  }

  // every setting block sums to 1 within tol and entries stay in
  // [-1e-12, 1 + 1e-12]; throws InvalidDistribution
  void validate(double tol = kDefaultTol) const;

 private:
  std::array<double, 256> table_{};
};

// Closed-form expected witness:
//   S = 2^{5-j} [gamma_j sin t1 + cos t1 prod_{g<j}(1+sqrt(1-gamma_g^2))]
//     + 2^{5-k} [same on the bob side] + 64
WitnessValue closed_form_S(int j, int k, const SideParameters& alice, const SideParameters& bob);

// Local bound 96 = 32 CHSH cells x 3.
double lhv_bound();

// CHSH probability sum of one deterministic strategy and its maximum over all
// 16 strategies (which is 3).
int chsh_strategy_value(int a0, int a1, int b0, int b1);
double chsh_prob_lhv_max();

// One witness term: the probability that the pair-i outcomes of Alice and Bob
// xor to r*s, conditioned on the parties' other-qubit outcomes (t, u). A
// condition of zero mass falls back to the unconditioned probability.
double term_probability(const JointDistribution& dist, int i, int r, int s, int t, int u,
                        int v, int w);

// The (Alice, Bob) observable pair of one witness term.
std::pair<ObservableLabel, ObservableLabel> witness_term_labels(int i, int r, int s, int t,
                                                                int u, int v, int w, int j,
                                                                int k);

// Label-based lookup; the two labels must name the same qubit pair.
double term_probability(const JointDistribution& dist, const ObservableLabel& alice,
                        const ObservableLabel& bob);

// Sum of all 128 terms, decomposed per pair.
WitnessValue witness_from_joint(const JointDistribution& dist);

}  // namespace seqbell
