#include "seqbell/witness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace seqbell {

void JointDistribution::validate(double tol) const {
  for (int s = 0; s < 16; ++s) {
    double sum = 0;
    for (int o = 0; o < 16; ++o) {
      const double p = table_[s * 16 + o];
      if (p < -1e-12 || p > 1 + 1e-12)
        throw InvalidDistribution("probability " + std::to_string(p) + " outside [0, 1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol)
      throw InvalidDistribution("setting block " + std::to_string(s) + " sums to " +
                                std::to_string(sum));
  }
}

static double bracket(int pos, const SideParameters& side) {
  if (pos < 1 || pos > static_cast<int>(side.gammas.size()))
    throw PositionOutOfRange("witness position " + std::to_string(pos) + " exceeds the " +
                             std::to_string(side.gammas.size()) + " configured sharpnesses");
  double prod = 1.0;  // empty product
  for (int g = 0; g < pos; ++g) {
    const double gamma = side.gammas[g];
    if (!(gamma > 0) || !(gamma <= 1))
      throw InvalidParam("gamma_" + std::to_string(g + 1) + " outside (0, 1]");
    if (g < pos - 1) prod *= 1.0 + std::sqrt(1.0 - gamma * gamma);
  }
  return side.gammas[pos - 1] * std::sin(side.theta) + std::cos(side.theta) * prod;
}

WitnessValue closed_form_S(int j, int k, const SideParameters& alice, const SideParameters& bob) {
  WitnessValue v;
  v.pair1_term = std::ldexp(bracket(j, alice), 5 - j);
  v.pair2_term = std::ldexp(bracket(k, bob), 5 - k);
  v.S = v.pair1_term + v.pair2_term + v.baseline;
  return v;
}

double lhv_bound() { return 32.0 * chsh_prob_lhv_max(); }

int chsh_strategy_value(int a0, int a1, int b0, int b1) {
  const int a[2] = {a0, a1};
  const int b[2] = {b0, b1};
  int value = 0;
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s)
      if ((a[r] ^ b[s]) == r * s) ++value;
  return value;
}

double chsh_prob_lhv_max() {
  int best = 0;
  for (int strat = 0; strat < 16; ++strat)
    best = std::max(best, chsh_strategy_value(strat & 1, (strat >> 1) & 1, (strat >> 2) & 1,
                                              (strat >> 3) & 1));
  return static_cast<double>(best);
}

double term_probability(const JointDistribution& dist, int i, int r, int s, int t, int u,
                        int v, int w) {
  // i = 1: Alice settings (m,n) = (r,v), Bob (m',n') = (s,w); outcomes of
  // interest (p,p'), condition (q,q') = (t,u). i = 2 swaps the qubit roles.
  const int m = (i == 1) ? r : v;
  const int n = (i == 1) ? v : r;
  const int mp = (i == 1) ? s : w;
  const int np = (i == 1) ? w : s;

  double matched = 0, mass = 0, unconditioned = 0;
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      for (int pp = 0; pp < 2; ++pp)
        for (int qq = 0; qq < 2; ++qq) {
          const double prob = dist.prob(m, n, mp, np, p, q, pp, qq);
          const bool event = (i == 1) ? ((p ^ pp) == r * s) : ((q ^ qq) == r * s);
          const bool cond = (i == 1) ? (q == t && qq == u) : (p == t && pp == u);
          if (event) unconditioned += prob;
          if (cond) {
            mass += prob;
            if (event) matched += prob;
          }
        }
  return (mass > 1e-12) ? matched / mass : unconditioned;
}

std::pair<ObservableLabel, ObservableLabel> witness_term_labels(int i, int r, int s, int t,
                                                                int u, int v, int w, int j,
                                                                int k) {
  ObservableLabel alice{Role::Alice, j, i, r, t, v};
  ObservableLabel bob{Role::Bob, k, i, s, u, w};
  return {alice, bob};
}

double term_probability(const JointDistribution& dist, const ObservableLabel& alice,
                        const ObservableLabel& bob) {
  if (alice.party != Role::Alice || bob.party != Role::Bob)
    throw InvalidParam("term labels must pair one Alice with one Bob observable");
  if (alice.qubit != bob.qubit) throw InvalidParam("term labels name different qubit pairs");
  return term_probability(dist, alice.qubit, alice.own_setting, bob.own_setting,
                          alice.other_outcome, bob.other_outcome, alice.other_setting,
                          bob.other_setting);
}

WitnessValue witness_from_joint(const JointDistribution& dist) {
  dist.validate();
  WitnessValue out;
  double sums[2] = {0, 0};
  for (int i = 1; i <= 2; ++i)
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t)
          for (int u = 0; u < 2; ++u)
            for (int v = 0; v < 2; ++v)
              for (int w = 0; w < 2; ++w)
                sums[i - 1] += term_probability(dist, i, r, s, t, u, v, w);
  out.pair1_term = sums[0] - 32.0;
  out.pair2_term = sums[1] - 32.0;
  out.S = sums[0] + sums[1];
  return out;
}

}  // namespace seqbell
