#pragma once

#include <array>
#include <vector>

#include "seqbell/matlin.hpp"

namespace seqbell {

enum class Role { Alice, Bob };

// One side's protocol knobs. Side 1 carries (epsilon^(1), theta^(1),
// gamma^(1)_j) and governs the (A1, B1) qubit pair: the Alices measure A1
// unsharply with gamma_j while every Bob measures B1 sharply at theta^(1).
// Side 2 is the mirror image on (A2, B2).
struct SideParameters {
  double epsilon = 0;
  double theta = 0;
  std::vector<double> gammas;  // sharpness per sequential observer, each in (0, 1]
};

// Validates the invariants (epsilon > 0, theta in (0, pi/2), gammas in (0, 1]).
SideParameters make_side_parameters(double epsilon, double theta, std::vector<double> gammas);

// Fills gammas from the (epsilon, theta) recursion; throws InvalidParam naming
// the first infeasible index when the sequence dies before n.
SideParameters side_from_recursion(double epsilon, double theta, int n);

struct QubitEffect {
  CMatrix matrix;  // 2x2; Hermitian, PSD, <= identity
  int outcome = 0;
  int setting = 0;
};

// qubit-factor effects; the cross labels (q,n) / (p,m) are bookkeeping only
// and never enter the matrices
QubitEffect alice_a1_effect(int p, int m, double gamma_j);   // z sharp / x unsharp
QubitEffect alice_a2_effect(int q, int n, double theta2);    // projector in the xz plane
QubitEffect bob_b1_effect(int p, int m, double theta1);      // projector in the xz plane
QubitEffect bob_b2_effect(int q, int n, double gamma_k);     // z sharp / x unsharp

constexpr int effect_index(int m, int n, int p, int q) { return m * 8 + n * 4 + p * 2 + q; }

// A party's 16 product effects, indexed by setting (m,n) and outcome (p,q),
// together with the qubit factors they are built from.
struct ProductPovm {
  Role role = Role::Alice;
  int position = 1;  // j for Alice, k for Bob (1-based)
  std::array<std::array<CMatrix, 2>, 2> qubit1;  // [setting m][outcome p], acts on A1/B1
  std::array<std::array<CMatrix, 2>, 2> qubit2;  // [setting n][outcome q], acts on A2/B2
  std::array<CMatrix, 16> effects;               // effect_index(m,n,p,q)

  const CMatrix& effect(int m, int n, int p, int q) const {
    return effects[effect_index(m, n, p, q)];
  }
};

// Alice^(j): effect(m,n,p,q) = a1(p|m; gamma_j) (x) a2(q|n; other_theta)
// Bob^(k):   effect(m,n,p,q) = b1(p|m; other_theta) (x) b2(q|n; gamma_k)
// params supplies the party's sharpness ladder; other_theta is the opposing
// side's angle.
ProductPovm build_party_povm(Role role, int position, const SideParameters& params,
                             double other_theta);

// Square-root (Luders) instrument of a product POVM.
struct Instrument {
  Role role = Role::Alice;
  int position = 1;
  std::array<CMatrix, 16> kraus;                       // sqrt_psd of each 4x4 effect
  std::array<std::array<CMatrix, 2>, 2> qubit1_kraus;  // [setting][outcome], 2x2
  std::array<std::array<CMatrix, 2>, 2> qubit2_kraus;
};

Instrument luders_instrument(const ProductPovm& povm);

// Setting-averaged, outcome-summed CPTP map describing an intermediate party's
// action on one 4x4 pair state: rho -> 1/2 sum_{s,o} k_{s,o} rho k_{s,o}^dag,
// lifted to the party's slot (Alice: first qubit, Bob: second).
struct PairChannel {
  std::array<CMatrix, 4> kraus;  // lifted 4x4, the 1/2 weight absorbed
  CMatrix apply(const CMatrix& rho) const;
};

PairChannel averaged_party_channel(const Instrument& instr, int pair);

// Invariant checks; both throw on violation.
void validate_povm(const ProductPovm& povm, double tol = kDefaultTol);
void validate_instrument(const Instrument& instr, double tol = 1e-8);

}  // namespace seqbell
