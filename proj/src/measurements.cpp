#include "seqbell/measurements.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "seqbell/gammaseq.hpp"

namespace seqbell {

SideParameters make_side_parameters(double epsilon, double theta, std::vector<double> gammas) {
  if (!(epsilon > 0)) throw InvalidParam("epsilon must be > 0");
  if (!(theta > 0) || !(theta < std::numbers::pi / 2))
    throw InvalidParam("theta must lie in (0, pi/2), got " + std::to_string(theta));
  for (size_t i = 0; i < gammas.size(); ++i)
    if (!(gammas[i] > 0) || !(gammas[i] <= 1))
      throw InvalidParam("gamma_" + std::to_string(i + 1) + " = " + std::to_string(gammas[i]) +
                         " outside (0, 1]");
  return SideParameters{epsilon, theta, std::move(gammas)};
}

SideParameters side_from_recursion(double epsilon, double theta, int n) {
  const GammaSequence seq = gamma_sequence(epsilon, theta, n);
  if (!seq.fully_feasible())
    throw InvalidParam("gamma_" + std::to_string(seq.feasible_count + 1) +
                       " is infeasible for epsilon = " + std::to_string(epsilon) +
                       ", theta = " + std::to_string(theta));
  return SideParameters{epsilon, theta, seq.feasible_prefix()};
}

static void check_bit(int b, const char* name) {
  if (b != 0 && b != 1) throw InvalidParam(std::string(name) + " must be 0 or 1");
}

static void check_gamma(double gamma) {
  if (!(gamma > 0) || !(gamma <= 1))
    throw InvalidParam("gamma = " + std::to_string(gamma) + " outside (0, 1]");
}

static void check_theta(double theta) {
  if (!(theta > 0) || !(theta < std::numbers::pi / 2))
    throw InvalidParam("theta = " + std::to_string(theta) + " outside (0, pi/2)");
}

// 1/2 [ 1 + z sigma_z + x sigma_x ]
static CMatrix half_bloch(double z, double x) {
  CMatrix m(2, 2);
  m(0, 0) = 0.5 * (1 + z);
  m(1, 1) = 0.5 * (1 - z);
  m(0, 1) = 0.5 * x;
  m(1, 0) = 0.5 * x;
  return m;
}

QubitEffect alice_a1_effect(int p, int m, double gamma_j) {
  check_bit(p, "p");
  check_bit(m, "m");
  check_gamma(gamma_j);
  const double sign = 1 - 2 * p;
  return QubitEffect{half_bloch((1 - m) * sign, m * sign * gamma_j), p, m};
}

QubitEffect alice_a2_effect(int q, int n, double theta2) {
  check_bit(q, "q");
  check_bit(n, "n");
  check_theta(theta2);
  return QubitEffect{half_bloch((1 - 2 * q) * std::cos(theta2),
                                (1 - 2 * std::abs(n - q)) * std::sin(theta2)),
                     q, n};
}

QubitEffect bob_b1_effect(int p, int m, double theta1) {
  check_bit(p, "p");
  check_bit(m, "m");
  check_theta(theta1);
  return QubitEffect{half_bloch((1 - 2 * p) * std::cos(theta1),
                                (1 - 2 * std::abs(m - p)) * std::sin(theta1)),
                     p, m};
}

QubitEffect bob_b2_effect(int q, int n, double gamma_k) {
  check_bit(q, "q");
  check_bit(n, "n");
  check_gamma(gamma_k);
  const double sign = 1 - 2 * q;
  return QubitEffect{half_bloch((1 - n) * sign, n * sign * gamma_k), q, n};
}

ProductPovm build_party_povm(Role role, int position, const SideParameters& params,
                             double other_theta) {
  if (position < 1 || position > static_cast<int>(params.gammas.size()))
    throw PositionOutOfRange("position " + std::to_string(position) + " exceeds the " +
                             std::to_string(params.gammas.size()) + " configured sharpnesses");
  const double gamma = params.gammas[position - 1];

  ProductPovm povm;
  povm.role = role;
  povm.position = position;
  for (int s = 0; s < 2; ++s)
    for (int o = 0; o < 2; ++o) {
      if (role == Role::Alice) {
        povm.qubit1[s][o] = alice_a1_effect(o, s, gamma).matrix;
        povm.qubit2[s][o] = alice_a2_effect(o, s, other_theta).matrix;
      } else {
        povm.qubit1[s][o] = bob_b1_effect(o, s, other_theta).matrix;
        povm.qubit2[s][o] = bob_b2_effect(o, s, gamma).matrix;
      }
    }
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          povm.effects[effect_index(m, n, p, q)] = kron(povm.qubit1[m][p], povm.qubit2[n][q]);
  return povm;
}

Instrument luders_instrument(const ProductPovm& povm) {
  Instrument instr;
  instr.role = povm.role;
  instr.position = povm.position;
  for (int s = 0; s < 2; ++s)
    for (int o = 0; o < 2; ++o) {
      instr.qubit1_kraus[s][o] = sqrt_psd(povm.qubit1[s][o]);
      instr.qubit2_kraus[s][o] = sqrt_psd(povm.qubit2[s][o]);
    }
  for (int idx = 0; idx < 16; ++idx) instr.kraus[idx] = sqrt_psd(povm.effects[idx]);
  return instr;
}

CMatrix PairChannel::apply(const CMatrix& rho) const {
  CMatrix out(rho.rows(), rho.cols());
  for (const CMatrix& k : kraus) out = out + k * rho * dagger(k);
  return out;
}

PairChannel averaged_party_channel(const Instrument& instr, int pair) {
  if (pair != 1 && pair != 2) throw InvalidParam("pair must be 1 or 2");
  const auto& factors = (pair == 1) ? instr.qubit1_kraus : instr.qubit2_kraus;
  const double w = std::sqrt(0.5);  // uniform setting choice
  PairChannel ch;
  int idx = 0;
  for (int s = 0; s < 2; ++s)
    for (int o = 0; o < 2; ++o) {
      const CMatrix& k = factors[s][o];
      ch.kraus[idx++] = (instr.role == Role::Alice) ? w * kron(k, identity2())
                                                    : w * kron(identity2(), k);
    }
  return ch;
}

void validate_povm(const ProductPovm& povm, double tol) {
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n) {
      CMatrix sum(4, 4);
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) {
          const CMatrix& e = povm.effect(m, n, p, q);
          if (!is_psd(e, tol))
            throw NotPsd("effect (m,n,p,q) = (" + std::to_string(m) + "," + std::to_string(n) +
                         "," + std::to_string(p) + "," + std::to_string(q) + ") is not PSD");
          if (max_abs_diff(e, kron(povm.qubit1[m][p], povm.qubit2[n][q])) > tol)
            throw Error("effect is not of tensor-product form");
          sum = sum + e;
        }
      if (max_abs_diff(sum, CMatrix::identity(4)) > tol)
        throw Error("effects for setting (" + std::to_string(m) + "," + std::to_string(n) +
                    ") do not sum to the identity");
    }
  // one-qubit completeness and the <= identity bound
  for (int s = 0; s < 2; ++s) {
    for (const auto& bank : {povm.qubit1, povm.qubit2}) {
      if (max_abs_diff(bank[s][0] + bank[s][1], identity2()) > tol)
        throw Error("qubit factors do not sum to the identity");
      for (int o = 0; o < 2; ++o)
        if (!is_psd(identity2() - bank[s][o], tol))
          throw NotPsd("qubit effect exceeds the identity");
    }
  }
}

void validate_instrument(const Instrument& instr, double tol) {
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n) {
      CMatrix sum(4, 4);
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) {
          const CMatrix& k = instr.kraus[effect_index(m, n, p, q)];
          sum = sum + dagger(k) * k;
        }
      if (max_abs_diff(sum, CMatrix::identity(4)) > tol)
        throw Error("Kraus completeness fails for setting (" + std::to_string(m) + "," +
                    std::to_string(n) + ")");
    }
}

}  // namespace seqbell
