#include "seqbell/gammaseq.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "seqbell/util.hpp"

namespace seqbell {

std::vector<double> GammaSequence::feasible_prefix() const {
  std::vector<double> out;
  out.reserve(feasible_count);
  for (int i = 0; i < feasible_count; ++i) out.push_back(*values[i]);
  return out;
}

static void check_eps_theta(double epsilon, double theta) {
  if (!(epsilon > 0) || !std::isfinite(epsilon))
    throw InvalidParam("epsilon must be > 0, got " + std::to_string(epsilon));
  // closed at pi/2: the recursion is well defined there, it just lands at
  // gamma_1 = 2(1+epsilon) >= 1 which the feasibility rule rejects
  if (!(theta > 0) || !(theta <= std::numbers::pi / 2))
    throw InvalidParam("theta must lie in (0, pi/2], got " + std::to_string(theta));
}

double gamma_first(double epsilon, double theta) {
  check_eps_theta(epsilon, theta);
  return (1.0 + epsilon) * (1.0 - std::cos(theta)) / std::sin(theta);
}

GammaSequence gamma_sequence(double epsilon, double theta, int n) {
  check_eps_theta(epsilon, theta);
  if (n < 1) throw InvalidParam("sequence length must be >= 1, got " + std::to_string(n));

  GammaSequence seq;
  seq.epsilon = epsilon;
  seq.theta = theta;
  seq.values.assign(n, std::nullopt);

  const double c = std::cos(theta);
  const double s = std::sin(theta);
  double prod = 1.0;   // prod_{g<j} (1 + sqrt(1 - gamma_g^2))
  double pow2 = 1.0;   // 2^{j-1}
  bool alive = true;
  for (int j = 1; j <= n && alive; ++j) {
    const double cand = (j == 1) ? gamma_first(epsilon, theta)
                                 : (1.0 + epsilon) * (pow2 - c * prod) / s;
    if (cand > 0.0 && cand < 1.0) {
      seq.values[j - 1] = cand;
      seq.feasible_count = j;
      prod *= 1.0 + std::sqrt(1.0 - cand * cand);
      pow2 *= 2.0;
    } else {
      alive = false;  // this and all later entries stay infeasible
    }
  }
  return seq;
}

double find_feasible_theta(double epsilon, int n, int grid_size) {
  if (!(epsilon > 0)) throw InvalidParam("epsilon must be > 0");
  if (n < 1) throw InvalidParam("n must be >= 1");
  if (grid_size < 1) throw InvalidParam("grid_size must be >= 1");

  const double quarter_pi = std::numbers::pi / 4;
  // Chunked scan with a max reduction; the answer does not depend on the
  // worker count.
  std::vector<long> best(static_cast<size_t>(max_threads()) + 1, -1);
  parallel_chunks(grid_size, [&](int chunk, long begin, long end) {
    long local = -1;
    for (long t = end; t > begin; --t) {  // descending within the chunk
      const double theta = quarter_pi * static_cast<double>(t) / grid_size;
      if (gamma_sequence(epsilon, theta, n).feasible_count == n) {
        local = t;
        break;
      }
    }
    best[chunk] = local;
  });
  const long winner = *std::max_element(best.begin(), best.end());
  if (winner < 1)
    throw NotFound("no feasible theta on the (0, pi/4] grid with " +
                   std::to_string(grid_size) + " points for n = " + std::to_string(n));
  return quarter_pi * static_cast<double>(winner) / grid_size;
}

int feasibility_monotonicity_violations(double epsilon, int n, int grid_size) {
  const double quarter_pi = std::numbers::pi / 4;
  double theta_star;
  try {
    theta_star = find_feasible_theta(epsilon, n, grid_size);
  } catch (const NotFound&) {
    return 0;
  }
  const long t_star = std::lround(theta_star / quarter_pi * grid_size);
  int violations = 0;
  for (long t = 1; t < t_star; ++t) {
    const double theta = quarter_pi * static_cast<double>(t) / grid_size;
    if (gamma_sequence(epsilon, theta, n).feasible_count != n) ++violations;
  }
  return violations;
}

}  // namespace seqbell
