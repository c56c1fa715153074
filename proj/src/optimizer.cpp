#include "seqbell/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "seqbell/gammaseq.hpp"
#include "seqbell/util.hpp"

namespace seqbell {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Point {
  std::vector<double> x;
  double value = kNegInf;
};

// objective over explicit side parameters; -inf when infeasible
double evaluate(const std::vector<double>& x, int J, int K, Objective objective, bool symmetric) {
  const double e1 = x[0], t1 = x[1];
  const double e2 = symmetric ? x[0] : x[2];
  const double t2 = symmetric ? x[1] : x[3];
  const double quarter_pi = std::numbers::pi / 4;
  if (!(e1 > 0) || e1 > 2 || !(t1 > 0) || t1 > quarter_pi) return kNegInf;
  if (!(e2 > 0) || e2 > 2 || !(t2 > 0) || t2 > quarter_pi) return kNegInf;

  const GammaSequence s1 = gamma_sequence(e1, t1, J);
  const GammaSequence s2 = gamma_sequence(e2, t2, K);
  if (!s1.fully_feasible() || !s2.fully_feasible()) return kNegInf;
  const SideParameters side1{e1, t1, s1.feasible_prefix()};
  const SideParameters side2{e2, t2, s2.feasible_prefix()};

  if (objective == Objective::FirstPair) return closed_form_S(1, 1, side1, side2).S;
  double acc = (objective == Objective::MinPair) ? std::numeric_limits<double>::infinity() : 0;
  for (int j = 1; j <= J; ++j)
    for (int k = 1; k <= K; ++k) {
      const double s = closed_form_S(j, k, side1, side2).S;
      if (objective == Objective::MinPair)
        acc = std::min(acc, s);
      else
        acc += s;
    }
  return (objective == Objective::MeanPair) ? acc / (J * K) : acc;
}

// standard Nelder-Mead (maximization), domain handled by the -inf sentinel
Point nelder_mead(std::vector<Point> simplex, long budget, long& evals,
                  const std::function<double(const std::vector<double>&)>& f) {
  const size_t dim = simplex.front().x.size();
  const auto add = [&](const std::vector<double>& a, double w, const std::vector<double>& b) {
    std::vector<double> out(dim);
    for (size_t i = 0; i < dim; ++i) out[i] = a[i] + w * (b[i] - a[i]);
    return out;
  };
  Point best = simplex.front();
  while (evals < budget) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Point& a, const Point& b) { return a.value > b.value; });
    if (simplex.front().value > best.value) best = simplex.front();

    std::vector<double> centroid(dim, 0.0);
    for (size_t i = 0; i + 1 < simplex.size(); ++i)
      for (size_t d = 0; d < dim; ++d) centroid[d] += simplex[i].x[d] / (simplex.size() - 1);
    Point& worst = simplex.back();

    Point refl{add(centroid, -1.0, worst.x), 0};
    refl.value = f(refl.x);
    ++evals;
    if (refl.value > simplex.front().value) {
      Point expa{add(centroid, -2.0, worst.x), 0};
      expa.value = f(expa.x);
      ++evals;
      worst = (expa.value > refl.value) ? expa : refl;
    } else if (refl.value > simplex[simplex.size() - 2].value) {
      worst = refl;
    } else {
      Point contr{add(centroid, 0.5, worst.x), 0};
      contr.value = f(contr.x);
      ++evals;
      if (contr.value > worst.value) {
        worst = contr;
      } else {
        for (size_t i = 1; i < simplex.size(); ++i) {
          simplex[i].x = add(simplex.front().x, 0.5, simplex[i].x);
          simplex[i].value = f(simplex[i].x);
          ++evals;
        }
      }
    }
  }
  for (const Point& p : simplex)
    if (p.value > best.value) best = p;
  return best;
}

OptimizationResult finish(const std::vector<double>& x, int J, int K, bool symmetric,
                          long evals) {
  OptimizationResult res;
  res.epsilon = x[0];
  res.theta = x[1];
  res.epsilon2 = symmetric ? x[0] : x[2];
  res.theta2 = symmetric ? x[1] : x[3];
  res.symmetric = symmetric;
  res.iterations = evals;
  const SideParameters side1{res.epsilon, res.theta,
                             gamma_sequence(res.epsilon, res.theta, J).feasible_prefix()};
  const SideParameters side2{res.epsilon2, res.theta2,
                             gamma_sequence(res.epsilon2, res.theta2, K).feasible_prefix()};
  res.table.assign(K, std::vector<double>(J, 0.0));
  res.min_S = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= K; ++k)
    for (int j = 1; j <= J; ++j) {
      const double s = closed_form_S(j, k, side1, side2).S;
      res.table[k - 1][j - 1] = s;
      if (s < res.min_S) {
        res.min_S = s;
        res.argmin_j = j;
        res.argmin_k = k;
      }
    }
  return res;
}

struct GridBest {
  double value = kNegInf;
  double eps = 0, theta = 0;
};

// lexicographic tie-break: value desc, eps asc, theta asc
bool better(const GridBest& a, const GridBest& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.eps != b.eps) return a.eps < b.eps;
  return a.theta < b.theta;
}

}  // namespace

double objective_min_S(double epsilon, double theta, int J, int K) {
  return evaluate({epsilon, theta}, J, K, Objective::MinPair, true);
}

OptimizationResult optimize_symmetric(int J, int K, long budget, unsigned long long seed,
                                      int grid, Objective objective) {
  if (J < 1 || K < 1) throw InvalidParam("J and K must be >= 1");
  if (grid < 1) throw InvalidParam("grid must be >= 1");
  const double quarter_pi = std::numbers::pi / 4;

  // coarse grid, rows scanned in parallel with a deterministic reduction
  std::vector<GridBest> row_best(grid);
  parallel_chunks(grid, [&](int, long begin, long end) {
    for (long ie = begin; ie < end; ++ie) {
      GridBest rb;
      const double eps = 2.0 * static_cast<double>(ie + 1) / grid;
      for (int it = 1; it <= grid; ++it) {
        const double theta = quarter_pi * it / grid;
        const double val = evaluate({eps, theta}, J, K, objective, true);
        if (better({val, eps, theta}, rb)) rb = {val, eps, theta};
      }
      row_best[ie] = rb;
    }
  });
  long evals = static_cast<long>(grid) * grid;

  std::vector<GridBest> ranked = row_best;
  std::sort(ranked.begin(), ranked.end(), better);
  if (ranked.front().value == kNegInf)
    throw NoFeasiblePoint("no feasible (epsilon, theta) on the " + std::to_string(grid) + "x" +
                          std::to_string(grid) + " grid");

  // simplex refinement from the best grid cells; the seed only jitters the
  // initial simplex shape
  std::mt19937_64 rng(seed);
  const auto jitter = [&] { return 1.0 + 0.1 * (static_cast<double>(rng() >> 11) * 0x1.0p-53); };
  const double de = 2.0 / grid, dt = quarter_pi / grid;
  const auto f = [&](const std::vector<double>& x) {
    return evaluate(x, J, K, objective, true);
  };

  Point best{{ranked.front().eps, ranked.front().theta}, ranked.front().value};
  const int starts = std::min<int>(3, static_cast<int>(ranked.size()));
  for (int i = 0; i < starts && ranked[i].value > kNegInf; ++i) {
    std::vector<Point> simplex(3);
    simplex[0] = {{ranked[i].eps, ranked[i].theta}, ranked[i].value};
    simplex[1].x = {ranked[i].eps - de * jitter(), ranked[i].theta};
    simplex[2].x = {ranked[i].eps, ranked[i].theta - dt * jitter()};
    simplex[1].value = f(simplex[1].x);
    simplex[2].value = f(simplex[2].x);
    evals += 2;
    const Point refined = nelder_mead(simplex, evals + budget / starts, evals, f);
    if (refined.value > best.value) best = refined;
  }
  return finish(best.x, J, K, true, evals);
}

OptimizationResult optimize_asymmetric(int J, int K, long budget, unsigned long long seed,
                                       int grid, Objective objective) {
  const OptimizationResult sym = optimize_symmetric(J, K, budget / 2, seed, grid, objective);
  long evals = sym.iterations;
  const auto f = [&](const std::vector<double>& x) {
    return evaluate(x, J, K, objective, false);
  };
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const auto jitter = [&] { return 1.0 + 0.1 * (static_cast<double>(rng() >> 11) * 0x1.0p-53); };
  const double de = 2.0 / grid, dt = (std::numbers::pi / 4) / grid;

  std::vector<Point> simplex(5);
  simplex[0].x = {sym.epsilon, sym.theta, sym.epsilon, sym.theta};
  const double steps[4] = {de, dt, de, dt};
  for (int i = 1; i <= 4; ++i) {
    simplex[i].x = simplex[0].x;
    simplex[i].x[i - 1] -= steps[i - 1] * jitter();
  }
  for (Point& p : simplex) {
    p.value = f(p.x);
    ++evals;
  }
  Point best = nelder_mead(simplex, evals + budget / 2, evals, f);
  // refinement never loses to the symmetric solution
  if (f({sym.epsilon, sym.theta, sym.epsilon, sym.theta}) >= best.value)
    best = {{sym.epsilon, sym.theta, sym.epsilon, sym.theta}, sym.min_S};
  ++evals;
  return finish(best.x, J, K, false, evals);
}

}  // namespace seqbell
