#include "seqbell/simulator.hpp"

#include <cmath>
#include <random>
#include <string>

#include "seqbell/util.hpp"

namespace seqbell {

void validate_pair_state(const PairState& state, double tol) {
  if (state.rho.rows() != 4 || state.rho.cols() != 4)
    throw DimensionMismatch("pair state must be 4x4");
  if (!is_hermitian(state.rho, tol)) throw NotHermitian("pair state is not Hermitian");
  if (!is_psd(state.rho, tol)) throw NotPsd("pair state is not PSD");
  if (std::abs(trace(state.rho) - cplx(1, 0)) > tol)
    throw Error("pair state trace differs from 1");
}

void validate_config(const ScenarioConfig& config) {
  if (config.alices < 1 || config.bobs < 1)
    throw InvalidParam("need at least one Alice and one Bob");
  if (static_cast<int>(config.alice.gammas.size()) < config.alices)
    throw InvalidParam("side-1 sharpness list shorter than the number of Alices");
  if (static_cast<int>(config.bob.gammas.size()) < config.bobs)
    throw InvalidParam("side-2 sharpness list shorter than the number of Bobs");
  if (!(config.visibility >= 0) || !(config.visibility <= 1))
    throw InvalidParam("visibility must lie in [0, 1]");
}

std::pair<PairState, PairState> initial_state() {
  CMatrix phi(4, 4);  // |phi+><phi+|, phi+ = (|00> + |11>)/sqrt(2)
  phi(0, 0) = phi(0, 3) = phi(3, 0) = phi(3, 3) = 0.5;
  return {PairState{phi, 1}, PairState{phi, 2}};
}

PairState apply_visibility(const PairState& state, double v) {
  if (!(v >= 0) || !(v <= 1)) throw InvalidParam("visibility must lie in [0, 1]");
  return PairState{v * state.rho + ((1.0 - v) / 4.0) * CMatrix::identity(4), state.pair_index};
}

std::pair<PairState, PairState> evolve_to_pair(const ScenarioConfig& config, int j, int k) {
  validate_config(config);
  if (j < 1 || j > config.alices)
    throw PositionOutOfRange("j = " + std::to_string(j) + " outside 1.." +
                             std::to_string(config.alices));
  if (k < 1 || k > config.bobs)
    throw PositionOutOfRange("k = " + std::to_string(k) + " outside 1.." +
                             std::to_string(config.bobs));

  auto [pair1, pair2] = initial_state();
  pair1 = apply_visibility(pair1, config.visibility);
  pair2 = apply_visibility(pair2, config.visibility);

  for (int g = 1; g < j; ++g) {
    const Instrument instr =
        luders_instrument(build_party_povm(Role::Alice, g, config.alice, config.bob.theta));
    pair1.rho = averaged_party_channel(instr, 1).apply(pair1.rho);
    pair2.rho = averaged_party_channel(instr, 2).apply(pair2.rho);
  }
  for (int h = 1; h < k; ++h) {
    const Instrument instr =
        luders_instrument(build_party_povm(Role::Bob, h, config.bob, config.alice.theta));
    pair1.rho = averaged_party_channel(instr, 1).apply(pair1.rho);
    pair2.rho = averaged_party_channel(instr, 2).apply(pair2.rho);
  }
  return {pair1, pair2};
}

static double born(const CMatrix& a, const CMatrix& b, const CMatrix& rho) {
  return trace(kron(a, b) * rho).real();
}

JointDistribution joint_distribution(const ScenarioConfig& config, int j, int k) {
  const auto [pair1, pair2] = evolve_to_pair(config, j, k);
  const ProductPovm alice = build_party_povm(Role::Alice, j, config.alice, config.bob.theta);
  const ProductPovm bob = build_party_povm(Role::Bob, k, config.bob, config.alice.theta);

  // pair-1 block depends only on (m, m'), pair-2 only on (n, n')
  double p1[2][2][2][2], p2[2][2][2][2];
  for (int sa = 0; sa < 2; ++sa)
    for (int sb = 0; sb < 2; ++sb)
      for (int oa = 0; oa < 2; ++oa)
        for (int ob = 0; ob < 2; ++ob) {
          p1[sa][sb][oa][ob] = born(alice.qubit1[sa][oa], bob.qubit1[sb][ob], pair1.rho);
          p2[sa][sb][oa][ob] = born(alice.qubit2[sa][oa], bob.qubit2[sb][ob], pair2.rho);
        }

  JointDistribution dist;
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n)
      for (int mp = 0; mp < 2; ++mp)
        for (int np = 0; np < 2; ++np)
          for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q)
              for (int pp = 0; pp < 2; ++pp)
                for (int qq = 0; qq < 2; ++qq)
                  dist.prob(m, n, mp, np, p, q, pp, qq) =
                      p1[m][mp][p][pp] * p2[n][np][q][qq];
  return dist;
}

//-------------------------------------------------------------------------
// unfactorized 16x16 reference path
//-------------------------------------------------------------------------

// qubit order (A1, A2, B1, B2), A1 most significant
static CMatrix lift16(const CMatrix& k2, int pos) {
  CMatrix out = (pos == 0) ? k2 : identity2();
  for (int i = 1; i < 4; ++i) out = kron(out, (i == pos) ? k2 : identity2());
  return out;
}

static CMatrix initial_global(double visibility) {
  auto [pair1, pair2] = initial_state();
  pair1 = apply_visibility(pair1, visibility);
  pair2 = apply_visibility(pair2, visibility);
  // (A1, B1, A2, B2) -> (A1, A2, B1, B2): swap the middle qubits
  const CMatrix raw = kron(pair1.rho, pair2.rho);
  CMatrix perm(16, 16);
  for (int i = 0; i < 16; ++i) {
    const int b0 = (i >> 3) & 1, b1 = (i >> 2) & 1, b2 = (i >> 1) & 1, b3 = i & 1;
    perm((b0 << 3) | (b2 << 2) | (b1 << 1) | b3, i) = 1;
  }
  return perm * raw * dagger(perm);
}

JointDistribution joint_distribution_reference(const ScenarioConfig& config, int j, int k) {
  validate_config(config);
  if (j < 1 || j > config.alices || k < 1 || k > config.bobs)
    throw PositionOutOfRange("target pair outside the configured chain");

  CMatrix rho = initial_global(config.visibility);
  const double w = 0.5;  // uniform setting choice
  for (int g = 1; g < j; ++g) {
    const Instrument instr =
        luders_instrument(build_party_povm(Role::Alice, g, config.alice, config.bob.theta));
    for (int qubit = 0; qubit < 2; ++qubit) {
      const auto& bank = (qubit == 0) ? instr.qubit1_kraus : instr.qubit2_kraus;
      CMatrix next(16, 16);
      for (int s = 0; s < 2; ++s)
        for (int o = 0; o < 2; ++o) {
          const CMatrix kk = lift16(bank[s][o], qubit);
          next = next + w * (kk * rho * dagger(kk));
        }
      rho = next;
    }
  }
  for (int h = 1; h < k; ++h) {
    const Instrument instr =
        luders_instrument(build_party_povm(Role::Bob, h, config.bob, config.alice.theta));
    for (int qubit = 0; qubit < 2; ++qubit) {
      const auto& bank = (qubit == 0) ? instr.qubit1_kraus : instr.qubit2_kraus;
      CMatrix next(16, 16);
      for (int s = 0; s < 2; ++s)
        for (int o = 0; o < 2; ++o) {
          const CMatrix kk = lift16(bank[s][o], qubit + 2);
          next = next + w * (kk * rho * dagger(kk));
        }
      rho = next;
    }
  }

  const ProductPovm alice = build_party_povm(Role::Alice, j, config.alice, config.bob.theta);
  const ProductPovm bob = build_party_povm(Role::Bob, k, config.bob, config.alice.theta);
  JointDistribution dist;
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n)
      for (int mp = 0; mp < 2; ++mp)
        for (int np = 0; np < 2; ++np)
          for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q)
              for (int pp = 0; pp < 2; ++pp)
                for (int qq = 0; qq < 2; ++qq) {
                  const CMatrix op = kron(kron(alice.qubit1[m][p], alice.qubit2[n][q]),
                                          kron(bob.qubit1[mp][pp], bob.qubit2[np][qq]));
                  dist.prob(m, n, mp, np, p, q, pp, qq) = trace(op * rho).real();
                }
  return dist;
}

WitnessValue simulate_S(const ScenarioConfig& config, int j, int k) {
  return witness_from_joint(joint_distribution(config, j, k));
}

ComparisonReport compare_closed_form(const ScenarioConfig& config) {
  validate_config(config);
  ComparisonReport report;
  for (int k = 1; k <= config.bobs; ++k)
    for (int j = 1; j <= config.alices; ++j) {
      const WitnessValue cf = closed_form_S(j, k, config.alice, config.bob);
      const WitnessValue sim = simulate_S(config, j, k);
      ComparisonCell cell;
      cell.j = j;
      cell.k = k;
      cell.closed_form = cf.S;
      cell.simulated = sim.S;
      cell.delta = sim.S - cf.S;
      cell.pair1_delta = sim.pair1_term - cf.pair1_term;
      cell.pair2_delta = sim.pair2_term - cf.pair2_term;
      cell.status = (j == 1 && k == 1) ? "forced" : "open";
      report.max_abs_deviation = std::max(report.max_abs_deviation, std::abs(cell.delta));
      report.cells.push_back(cell);
    }
  return report;
}

double critical_visibility(const ScenarioConfig& config, double tol) {
  validate_config(config);
  if (!(tol > 0)) throw InvalidParam("tolerance must be > 0");
  double s_min = 0;
  bool first = true;
  for (int j = 1; j <= config.alices; ++j)
    for (int k = 1; k <= config.bobs; ++k) {
      const double s = closed_form_S(j, k, config.alice, config.bob).S;
      if (first || s < s_min) s_min = s;
      first = false;
    }
  if (s_min <= 96.0)
    throw NoViolation("closed form yields S_min = " + std::to_string(s_min) +
                      " <= 96 at full visibility");

  const auto scaled_min = [&](double v) { return 64.0 + v * (s_min - 64.0); };
  double lo = 0.0, hi = 1.0, mid = 0.5;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double s = scaled_min(mid);
    if (std::abs(s - 96.0) <= tol) break;
    if (s < 96.0)
      lo = mid;
    else
      hi = mid;
  }
  return mid;
}

//-------------------------------------------------------------------------
// trajectory sampler
//-------------------------------------------------------------------------

static double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// samples one binary outcome on a pair state and applies the lifted Kraus
static int measure_and_update(CMatrix& rho, const std::array<CMatrix, 2>& kraus_1q,
                              bool first_slot, std::mt19937_64& g) {
  CMatrix k0 = first_slot ? kron(kraus_1q[0], identity2()) : kron(identity2(), kraus_1q[0]);
  CMatrix k1 = first_slot ? kron(kraus_1q[1], identity2()) : kron(identity2(), kraus_1q[1]);
  const CMatrix post0 = k0 * rho * dagger(k0);
  const double prob0 = trace(post0).real();
  if (uniform01(g) < prob0) {
    rho = (1.0 / prob0) * post0;
    return 0;
  }
  const CMatrix post1 = k1 * rho * dagger(k1);
  rho = (1.0 / trace(post1).real()) * post1;
  return 1;
}

SampledJoint sample_joint(const ScenarioConfig& config, int j, int k, long trials,
                          unsigned long long seed) {
  validate_config(config);
  if (trials < 1) throw InvalidParam("need at least one trajectory");
  if (j < 1 || j > config.alices || k < 1 || k > config.bobs)
    throw PositionOutOfRange("target pair outside the configured chain");

  std::vector<Instrument> alice_chain, bob_chain;
  for (int g = 1; g < j; ++g)
    alice_chain.push_back(
        luders_instrument(build_party_povm(Role::Alice, g, config.alice, config.bob.theta)));
  for (int h = 1; h < k; ++h)
    bob_chain.push_back(
        luders_instrument(build_party_povm(Role::Bob, h, config.bob, config.alice.theta)));
  const ProductPovm alice = build_party_povm(Role::Alice, j, config.alice, config.bob.theta);
  const ProductPovm bob = build_party_povm(Role::Bob, k, config.bob, config.alice.theta);

  const auto [init1, init2] = initial_state();
  const CMatrix rho1_init = apply_visibility(init1, config.visibility).rho;
  const CMatrix rho2_init = apply_visibility(init2, config.visibility).rho;

  // fixed logical shards so the counts do not depend on the worker count
  constexpr int kShards = 16;
  std::array<std::array<long, 256>, kShards> shard_counts{};
  const long per_shard = trials / kShards;
  const long remainder = trials % kShards;

  parallel_chunks(kShards, [&](int, long begin, long end) {
    for (long shard = begin; shard < end; ++shard) {
      std::seed_seq sseq{static_cast<unsigned>(seed), static_cast<unsigned>(seed >> 32),
                         static_cast<unsigned>(shard)};
      std::mt19937_64 g(sseq);
      const long n = per_shard + (shard < remainder ? 1 : 0);
      for (long t = 0; t < n; ++t) {
        CMatrix rho1 = rho1_init, rho2 = rho2_init;
        for (const Instrument& instr : alice_chain) {
          const int m = uniform01(g) < 0.5 ? 0 : 1;
          const int n_set = uniform01(g) < 0.5 ? 0 : 1;
          measure_and_update(rho1, instr.qubit1_kraus[m], true, g);
          measure_and_update(rho2, instr.qubit2_kraus[n_set], true, g);
        }
        for (const Instrument& instr : bob_chain) {
          const int mp = uniform01(g) < 0.5 ? 0 : 1;
          const int np = uniform01(g) < 0.5 ? 0 : 1;
          measure_and_update(rho1, instr.qubit1_kraus[mp], false, g);
          measure_and_update(rho2, instr.qubit2_kraus[np], false, g);
        }
        const int m = uniform01(g) < 0.5 ? 0 : 1;
        const int n_set = uniform01(g) < 0.5 ? 0 : 1;
        const int mp = uniform01(g) < 0.5 ? 0 : 1;
        const int np = uniform01(g) < 0.5 ? 0 : 1;
        // joint outcome on each pair via the Born rule
        int outcomes[2][2];  // [pair][party] -> bit
        const CMatrix* states[2] = {&rho1, &rho2};
        for (int pair = 0; pair < 2; ++pair) {
          const auto& abank = (pair == 0) ? alice.qubit1[m] : alice.qubit2[n_set];
          const auto& bbank = (pair == 0) ? bob.qubit1[mp] : bob.qubit2[np];
          const double roll = uniform01(g);
          double cum = 0;
          int cell = 3;  // fall through to the last cell on rounding
          for (int c = 0; c < 4; ++c) {
            cum += born(abank[c >> 1], bbank[c & 1], *states[pair]);
            if (roll < cum) {
              cell = c;
              break;
            }
          }
          outcomes[pair][0] = cell >> 1;
          outcomes[pair][1] = cell & 1;
        }
        const int sidx = JointDistribution::setting_index(m, n_set, mp, np);
        const int oidx = JointDistribution::outcome_index(outcomes[0][0], outcomes[1][0],
                                                          outcomes[0][1], outcomes[1][1]);
        ++shard_counts[shard][sidx * 16 + oidx];
      }
    }
  });

  SampledJoint out;
  out.total_trials = trials;
  std::array<long, 256> counts{};
  for (const auto& sc : shard_counts)
    for (int i = 0; i < 256; ++i) counts[i] += sc[i];
  for (int s = 0; s < 16; ++s) {
    long block = 0;
    for (int o = 0; o < 16; ++o) block += counts[s * 16 + o];
    out.block_trials[s] = block;
    for (int o = 0; o < 16; ++o) {
      const int m = (s >> 3) & 1, n = (s >> 2) & 1, mp = (s >> 1) & 1, np = s & 1;
      const int p = (o >> 3) & 1, q = (o >> 2) & 1, pp = (o >> 1) & 1, qq = o & 1;
      out.dist.prob(m, n, mp, np, p, q, pp, qq) =
          block > 0 ? static_cast<double>(counts[s * 16 + o]) / block : 1.0 / 16.0;
    }
  }
  return out;
}

}  // namespace seqbell
