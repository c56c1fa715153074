#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "seqbell/measurements.hpp"
#include "test_helpers.hpp"

using namespace seqbell;
using namespace seqbell::testing;

namespace {

CMatrix bloch_half(double z, double x) {
  return 0.5 * (identity2() + z * pauli_z() + x * pauli_x());
}

double bloch_component(const CMatrix& rho, const CMatrix& pauli) {
  return trace(pauli * rho).real();
}

SideParameters random_side(std::mt19937_64& rng, int count) {
  std::vector<double> gammas;
  for (int i = 0; i < count; ++i) gammas.push_back(uniform(rng, 1e-3, 1.0));
  return make_side_parameters(uniform(rng, 0.01, 1.0),
                              uniform(rng, 0.05, std::numbers::pi / 2 - 0.05),
                              std::move(gammas));
}

}  // namespace

TEST_CASE("alice A1 effects: sharp z branch and unsharp x branch") {
  // m = 0 is the sharp z measurement: |0><0| for p = 0
  const QubitEffect e00 = alice_a1_effect(0, 0, 0.7);
  CHECK(max_abs_diff(e00.matrix, bloch_half(1, 0)) == 0.0);
  CHECK(e00.outcome == 0);
  CHECK(e00.setting == 0);

  // m = 1, gamma = 1 is the sharp x measurement: |-><-| for p = 1
  CHECK(max_abs_diff(alice_a1_effect(1, 1, 1.0).matrix, bloch_half(0, -1)) == 0.0);

  // unsharp branch spectrum is (1 -+ gamma)/2
  const EigResult eig = eig_hermitian(alice_a1_effect(0, 1, 0.3857).matrix);
  CHECK(eig.eigenvalues[0] == doctest::Approx(0.30715).epsilon(1e-10));
  CHECK(eig.eigenvalues[1] == doctest::Approx(0.69285).epsilon(1e-10));
}

TEST_CASE("alice A2 effects are projectors along (sin, 0, cos)") {
  const double theta = 0.61;
  const CMatrix e = alice_a2_effect(0, 0, theta).matrix;
  CHECK(max_abs_diff(e, bloch_half(std::cos(theta), std::sin(theta))) < 1e-15);
  CHECK(max_abs_diff(e * e, e) < 1e-15);  // rank-1 projector

  // completeness over outcomes for a fixed setting
  CHECK(max_abs_diff(alice_a2_effect(0, 0, theta).matrix + alice_a2_effect(1, 0, theta).matrix,
                     identity2()) < 1e-15);

  // (q=1, n=1, pi/4): 1/2 [1 - (sigma_z - sigma_x)/sqrt(2)]
  const double invrt2 = 1.0 / std::sqrt(2.0);
  CHECK(max_abs_diff(alice_a2_effect(1, 1, std::numbers::pi / 4).matrix,
                     bloch_half(-invrt2, invrt2)) < 1e-15);
}

TEST_CASE("bob B1 effects mirror A2 with (p,m) labels") {
  const double theta = 0.73;
  CHECK(max_abs_diff(bob_b1_effect(0, 0, theta).matrix,
                     bloch_half(std::cos(theta), std::sin(theta))) < 1e-15);
  for (int m = 0; m < 2; ++m)
    CHECK(max_abs_diff(bob_b1_effect(0, m, theta).matrix + bob_b1_effect(1, m, theta).matrix,
                       identity2()) < 1e-15);

  const double invrt2 = 1.0 / std::sqrt(2.0);
  CHECK(max_abs_diff(bob_b1_effect(1, 0, std::numbers::pi / 4).matrix,
                     bloch_half(-invrt2, -invrt2)) < 1e-15);
}

TEST_CASE("bob B2 effects mirror A1 with (q,n) labels") {
  CHECK(max_abs_diff(bob_b2_effect(0, 0, 0.4).matrix, bloch_half(1, 0)) == 0.0);
  CHECK(max_abs_diff(bob_b2_effect(1, 1, 1.0).matrix, bloch_half(0, -1)) == 0.0);
  const EigResult eig = eig_hermitian(bob_b2_effect(0, 1, 0.3857).matrix);
  CHECK(eig.eigenvalues[0] == doctest::Approx(0.30715).epsilon(1e-10));
  CHECK(eig.eigenvalues[1] == doctest::Approx(0.69285).epsilon(1e-10));
}

TEST_CASE("effect constructors reject invalid parameters") {
  CHECK_THROWS_AS(alice_a1_effect(0, 0, 0.0), InvalidParam);
  CHECK_THROWS_AS(alice_a1_effect(0, 0, 1.1), InvalidParam);
  CHECK_THROWS_AS(alice_a2_effect(0, 0, 0.0), InvalidParam);
  CHECK_THROWS_AS(alice_a2_effect(0, 0, std::numbers::pi / 2), InvalidParam);
  CHECK_THROWS_AS(bob_b1_effect(0, 2, 0.5), InvalidParam);
  CHECK_THROWS_AS(bob_b2_effect(-1, 0, 0.5), InvalidParam);
}

TEST_CASE("side parameter validation") {
  CHECK_THROWS_AS(make_side_parameters(0.0, 0.5, {0.5}), InvalidParam);
  CHECK_THROWS_AS(make_side_parameters(0.5, 0.5, {0.0}), InvalidParam);
  CHECK_THROWS_AS(make_side_parameters(0.5, 0.5, {1.5}), InvalidParam);
  CHECK_NOTHROW(make_side_parameters(0.5, 0.5, {1.0}));  // sharp limit allowed

  try {
    side_from_recursion(0.5577, std::numbers::pi / 4 - 0.2999, 3);
    FAIL("expected InvalidParam");
  } catch (const InvalidParam& e) {
    // diagnostic names the first infeasible index
    CHECK(std::string(e.what()).find("gamma_3") != std::string::npos);
  }
}

TEST_CASE("build_party_povm satisfies the POVM invariants on a random grid") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const SideParameters params = random_side(rng, 3);
    const double other = uniform(rng, 0.05, std::numbers::pi / 2 - 0.05);
    const int position = 1 + static_cast<int>(rng() % 3);
    const Role role = (rng() % 2) ? Role::Alice : Role::Bob;
    const ProductPovm povm = build_party_povm(role, position, params, other);
    CHECK_NOTHROW(validate_povm(povm, 1e-9));
  }
}

TEST_CASE("sharp parameters make every effect a projector") {
  const SideParameters params = make_side_parameters(0.5, std::numbers::pi / 4, {1.0});
  for (Role role : {Role::Alice, Role::Bob}) {
    const ProductPovm povm = build_party_povm(role, 1, params, std::numbers::pi / 4);
    for (const CMatrix& e : povm.effects) {
      CHECK(max_abs_diff(e * e, e) < 1e-9);
      CHECK(trace(e).real() == doctest::Approx(1.0).epsilon(1e-9));  // rank 1
    }
  }
}

TEST_CASE("unsharp x sharp spectra") {
  // Alice with gamma = 0.5: m = 1 effects have eigenvalues {0, 0.25, 0.75}
  const SideParameters params = make_side_parameters(0.5, 0.6, {0.5});
  const ProductPovm povm = build_party_povm(Role::Alice, 1, params, 0.6);
  for (int n = 0; n < 2; ++n)
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q) {
        const EigResult eig = eig_hermitian(povm.effect(1, n, p, q));
        for (double lambda : eig.eigenvalues) {
          const bool known = std::abs(lambda) < 1e-9 || std::abs(lambda - 0.25) < 1e-9 ||
                             std::abs(lambda - 0.75) < 1e-9;
          CHECK(known);
        }
      }
}

TEST_CASE("position bounds") {
  const SideParameters params = make_side_parameters(0.5, 0.5, {0.3, 0.4});
  CHECK_THROWS_AS(build_party_povm(Role::Alice, 3, params, 0.5), PositionOutOfRange);
  CHECK_THROWS_AS(build_party_povm(Role::Alice, 0, params, 0.5), PositionOutOfRange);
}

TEST_CASE("luders instrument: projective effects keep their projectors") {
  const SideParameters params = make_side_parameters(0.5, std::numbers::pi / 4, {1.0});
  const ProductPovm povm = build_party_povm(Role::Alice, 1, params, std::numbers::pi / 4);
  const Instrument instr = luders_instrument(povm);
  // sqrt amplifies the ~1e-17 eigenvalue dust of the projector to ~sqrt(eps)
  for (int idx = 0; idx < 16; ++idx)
    CHECK(max_abs_diff(instr.kraus[idx], povm.effects[idx]) < 1e-7);
}

TEST_CASE("luders instrument: unsharp root has the spectral form") {
  // sqrt(1/2 (1 + gamma sigma_x)) = sqrt((1+gamma)/2)|+><+| + sqrt((1-gamma)/2)|-><-|
  const double gamma = 0.6;
  const SideParameters params = make_side_parameters(0.5, 0.6, {gamma});
  const Instrument instr = luders_instrument(build_party_povm(Role::Alice, 1, params, 0.6));
  const CMatrix plus = bloch_half(0, 1), minus = bloch_half(0, -1);
  const CMatrix want = std::sqrt((1 + gamma) / 2) * plus + std::sqrt((1 - gamma) / 2) * minus;
  CHECK(max_abs_diff(instr.qubit1_kraus[1][0], want) < 1e-12);
}

TEST_CASE("instrument kraus factorizes and is complete") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 15; ++trial) {
    const SideParameters params = random_side(rng, 2);
    const Instrument instr = luders_instrument(
        build_party_povm(trial % 2 ? Role::Alice : Role::Bob, 1 + trial % 2, params, 0.8));
    CHECK_NOTHROW(validate_instrument(instr, 1e-8));
    for (int m = 0; m < 2; ++m)
      for (int n = 0; n < 2; ++n)
        for (int p = 0; p < 2; ++p)
          for (int q = 0; q < 2; ++q)
            CHECK(max_abs_diff(instr.kraus[effect_index(m, n, p, q)],
                               kron(instr.qubit1_kraus[m][p], instr.qubit2_kraus[n][q])) < 1e-7);
  }
}

TEST_CASE("averaged channel is trace-preserving and unital") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const SideParameters params = random_side(rng, 1);
    const Instrument instr = luders_instrument(
        build_party_povm(trial % 2 ? Role::Alice : Role::Bob, 1, params, 0.7));
    for (int pair : {1, 2}) {
      const PairChannel ch = averaged_party_channel(instr, pair);
      CMatrix ktk(4, 4), kkt(4, 4);
      for (const CMatrix& k : ch.kraus) {
        ktk = ktk + dagger(k) * k;
        kkt = kkt + k * dagger(k);
      }
      CHECK(max_abs_diff(ktk, CMatrix::identity(4)) < 1e-9);
      CHECK(max_abs_diff(kkt, CMatrix::identity(4)) < 1e-9);
    }
  }
}

TEST_CASE("unsharp x sub-channel: keeps sigma_x, shrinks sigma_z by sqrt(1-gamma^2)") {
  const double gamma = 0.8;
  const SideParameters params = make_side_parameters(0.5, 0.6, {gamma});
  const Instrument instr = luders_instrument(build_party_povm(Role::Alice, 1, params, 0.6));
  const CMatrix rho = bloch_half(0.7, 0.3);
  CMatrix post(2, 2);
  for (int o = 0; o < 2; ++o) {
    const CMatrix& k = instr.qubit1_kraus[1][o];  // x branch, both outcomes
    post = post + k * rho * dagger(k);
  }
  CHECK(bloch_component(post, pauli_x()) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(bloch_component(post, pauli_z()) ==
        doctest::Approx(0.7 * std::sqrt(1 - gamma * gamma)).epsilon(1e-12));
}

TEST_CASE("alice averaged channel scales z by (1+sqrt(1-g^2))/2 and x by 1/2") {
  const double gamma = 0.45;
  const SideParameters params = make_side_parameters(0.5, 0.6, {gamma});
  const Instrument instr = luders_instrument(build_party_povm(Role::Alice, 1, params, 0.6));
  const PairChannel ch = averaged_party_channel(instr, 1);

  const CMatrix rho = kron(bloch_half(0.7, 0.3), 0.5 * identity2());
  const CMatrix post = ch.apply(rho);
  const double zs = 0.5 * (1 + std::sqrt(1 - gamma * gamma));
  CHECK(trace(kron(pauli_z(), identity2()) * post).real() ==
        doctest::Approx(0.7 * zs).epsilon(1e-12));
  CHECK(trace(kron(pauli_x(), identity2()) * post).real() ==
        doctest::Approx(0.3 * 0.5).epsilon(1e-12));
}

TEST_CASE("bob channel acts on the second slot: z by cos^2, x by sin^2") {
  const double theta = 0.52;
  const SideParameters params = make_side_parameters(0.5, theta, {0.5});
  const Instrument instr = luders_instrument(build_party_povm(Role::Bob, 1, params, theta));
  const PairChannel ch = averaged_party_channel(instr, 1);  // B1 factors, sharp at theta

  const CMatrix rho = kron(0.5 * identity2(), bloch_half(0.6, 0.2));
  const CMatrix post = ch.apply(rho);
  CHECK(trace(kron(identity2(), pauli_z()) * post).real() ==
        doctest::Approx(0.6 * std::cos(theta) * std::cos(theta)).epsilon(1e-12));
  CHECK(trace(kron(identity2(), pauli_x()) * post).real() ==
        doctest::Approx(0.2 * std::sin(theta) * std::sin(theta)).epsilon(1e-12));
  // the idle first slot stays maximally mixed
  CHECK(trace(kron(pauli_z(), identity2()) * post).real() == doctest::Approx(0.0));
}
