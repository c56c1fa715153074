// command-line front end: reproduces the S^(j,k) tables, runs the exact
// simulator, cross-checks it against the closed form, and searches protocol
// parameters

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seqbell/gammaseq.hpp"
#include "seqbell/optimizer.hpp"
#include "seqbell/report.hpp"
#include "seqbell/simulator.hpp"
#include "seqbell/util.hpp"

using namespace seqbell;

namespace {

struct CommonOpts {
  int alices = 2;
  int bobs = 2;
  double epsilon = 0.5577;
  std::optional<double> theta;
  double theta_offset = 0.2999;
  std::optional<double> epsilon2;
  std::optional<double> theta2;
  std::optional<double> theta2_offset;
  std::vector<double> gamma;   // explicit sharpnesses, both sides
  std::vector<double> gamma2;  // side-2 override
  double visibility = 1.0;
  std::string format = "pretty";
  std::string output;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_visibility = true) {
  cmd->add_option("-J,--alices", o.alices, "number of sequential Alices")
      ->check(CLI::PositiveNumber);
  cmd->add_option("-K,--bobs", o.bobs, "number of sequential Bobs")->check(CLI::PositiveNumber);
  cmd->add_option("-e,--epsilon", o.epsilon, "epsilon for both sides (default 0.5577)");
  auto* th = cmd->add_option("--theta", o.theta, "theta in radians");
  cmd->add_option("--theta-offset", o.theta_offset,
                  "theta as pi/4 - offset (default offset 0.2999)")
      ->excludes(th);
  cmd->add_option("--epsilon2", o.epsilon2, "side-2 epsilon override");
  auto* th2 = cmd->add_option("--theta2", o.theta2, "side-2 theta override (radians)");
  cmd->add_option("--theta2-offset", o.theta2_offset, "side-2 theta as pi/4 - offset")
      ->excludes(th2);
  cmd->add_option("-g,--gamma", o.gamma,
                  "explicit sharpness list (skips the epsilon recursion)");
  cmd->add_option("--gamma2", o.gamma2, "side-2 sharpness list override");
  if (with_visibility)
    cmd->add_option("-v,--visibility", o.visibility, "isotropic-noise visibility in [0,1]");
  cmd->add_option("-f,--format", o.format, "output format: pretty|csv|json")
      ->check(CLI::IsMember({"pretty", "csv", "json"}));
  cmd->add_option("-o,--output", o.output, "write the report to a file instead of stdout");
}

double resolved_theta(const std::optional<double>& abs, const std::optional<double>& offset,
                      double fallback) {
  if (abs) return *abs;
  if (offset) return std::numbers::pi / 4 - *offset;
  return fallback;
}

ScenarioConfig build_config(const CommonOpts& o) {
  ScenarioConfig config;
  config.alices = o.alices;
  config.bobs = o.bobs;
  config.visibility = o.visibility;
  const double t1 = o.theta ? *o.theta : std::numbers::pi / 4 - o.theta_offset;
  const double t2 = resolved_theta(o.theta2, o.theta2_offset, t1);
  const double e1 = o.epsilon;
  const double e2 = o.epsilon2 ? *o.epsilon2 : e1;

  const auto build_side = [](double eps, double theta, const std::vector<double>& gammas,
                             int count) {
    if (!gammas.empty()) {
      if (static_cast<int>(gammas.size()) < count)
        throw InvalidParam("explicit gamma list has " + std::to_string(gammas.size()) +
                           " entries but " + std::to_string(count) + " observers are configured");
      return make_side_parameters(eps, theta, gammas);
    }
    return side_from_recursion(eps, theta, count);
  };
  config.alice = build_side(e1, t1, o.gamma, o.alices);
  config.bob = build_side(e2, t2, o.gamma2.empty() ? o.gamma : o.gamma2, o.bobs);
  return config;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file " + path);
  out << text;
}

std::vector<std::vector<double>> closed_form_table(const ScenarioConfig& config) {
  std::vector<std::vector<double>> values(config.bobs, std::vector<double>(config.alices));
  for (int k = 1; k <= config.bobs; ++k)
    for (int j = 1; j <= config.alices; ++j)
      values[k - 1][j - 1] = closed_form_S(j, k, config.alice, config.bob).S;
  return values;
}

int cmd_table(const CommonOpts& o) {
  const ScenarioConfig config = build_config(o);
  const auto values = closed_form_table(config);
  switch (parse_format(o.format)) {
    case OutputFormat::Pretty: emit(render_table_pretty(config, values), o.output); break;
    case OutputFormat::Csv: emit(render_table_csv(values), o.output); break;
    case OutputFormat::Json: emit(table_json(config, values).dump(2) + "\n", o.output); break;
  }
  return 0;
}

int cmd_gammas(const CommonOpts& o, int n) {
  const double t1 = o.theta ? *o.theta : std::numbers::pi / 4 - o.theta_offset;
  const GammaSequence seq = gamma_sequence(o.epsilon, t1, n);
  switch (parse_format(o.format)) {
    case OutputFormat::Pretty: emit(render_gammas_pretty(seq), o.output); break;
    case OutputFormat::Csv: emit(render_gammas_csv(seq), o.output); break;
    case OutputFormat::Json: emit(gammas_json(seq).dump(2) + "\n", o.output); break;
  }
  return 0;
}

int cmd_simulate(const CommonOpts& o, int j, int k, bool full_state, long sample_trials,
                 unsigned long long seed) {
  const ScenarioConfig config = build_config(o);
  const WitnessValue sim = full_state
                               ? witness_from_joint(joint_distribution_reference(config, j, k))
                               : simulate_S(config, j, k);
  const WitnessValue cf = closed_form_S(j, k, config.alice, config.bob);
  std::optional<double> sampled_S;
  if (sample_trials > 0)
    sampled_S = witness_from_joint(sample_joint(config, j, k, sample_trials, seed).dist).S;
  switch (parse_format(o.format)) {
    case OutputFormat::Pretty: {
      std::string extra;
      if (sampled_S)
        extra = "  sampled S (" + std::to_string(sample_trials) + " trajectories, seed " +
                std::to_string(seed) + ") = " + format_g17(*sampled_S) + "\n";
      emit(render_simulate_pretty(config, j, k, sim, cf) + extra, o.output);
      break;
    }
    case OutputFormat::Csv: emit(render_simulate_csv(j, k, sim, cf), o.output); break;
    case OutputFormat::Json: {
      nlohmann::json doc = simulate_json(config, j, k, sim, cf);
      if (sampled_S) {
        doc["sampled_S"] = *sampled_S;
        doc["sample_trials"] = sample_trials;
        doc["seed"] = seed;
      }
      emit(doc.dump(2) + "\n", o.output);
      break;
    }
  }
  return 0;
}

int cmd_compare(const CommonOpts& o) {
  const ScenarioConfig config = build_config(o);
  const ComparisonReport report = compare_closed_form(config);
  switch (parse_format(o.format)) {
    case OutputFormat::Pretty: emit(render_compare_pretty(config, report), o.output); break;
    case OutputFormat::Csv: emit(render_compare_csv(report), o.output); break;
    case OutputFormat::Json:
      emit(compare_json(config, report).dump(2) + "\n", o.output);
      break;
  }
  return 0;
}

int cmd_optimize(int J, int K, long budget, unsigned long long seed, int grid,
                 const std::string& objective_name, bool asymmetric, const std::string& format,
                 const std::string& output) {
  Objective objective = Objective::MinPair;
  if (objective_name == "mean") objective = Objective::MeanPair;
  if (objective_name == "first") objective = Objective::FirstPair;
  const OptimizationResult result =
      asymmetric ? optimize_asymmetric(J, K, budget, seed, grid, objective)
                 : optimize_symmetric(J, K, budget, seed, grid, objective);
  switch (parse_format(format)) {
    case OutputFormat::Pretty: emit(render_optimize_pretty(J, K, result), output); break;
    case OutputFormat::Csv: emit(render_optimize_csv(result), output); break;
    case OutputFormat::Json:
      emit(optimize_json(J, K, objective, result).dump(2) + "\n", output);
      break;
  }
  return 0;
}

int cmd_visibility(const CommonOpts& o, double tol) {
  const ScenarioConfig config = build_config(o);
  const double v = critical_visibility(config, tol);
  double s_min = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= config.alices; ++j)
    for (int k = 1; k <= config.bobs; ++k)
      s_min = std::min(s_min, closed_form_S(j, k, config.alice, config.bob).S);
  switch (parse_format(o.format)) {
    case OutputFormat::Pretty: emit(render_visibility_pretty(v, s_min), o.output); break;
    case OutputFormat::Csv:
      emit("critical_visibility,s_min\n" + format_g17(v) + "," + format_g17(s_min) + "\n",
           o.output);
      break;
    case OutputFormat::Json:
      emit(visibility_json(config, v, s_min).dump(2) + "\n", o.output);
      break;
  }
  return 0;
}

int cmd_verify(const CommonOpts& o) {
  const ScenarioConfig config = build_config(o);
  struct Check {
    std::string name;
    bool passed;
    std::string detail;
  };
  std::vector<Check> checks;
  const auto run = [&](const std::string& name, auto&& body) {
    try {
      body();
      checks.push_back({name, true, ""});
    } catch (const std::exception& e) {
      checks.push_back({name, false, e.what()});
    }
  };

  run("gamma prefixes positive and strictly increasing", [&] {
    for (const SideParameters* side : {&config.alice, &config.bob}) {
      double prev = 0;
      for (double g : side->gammas) {
        if (!(g > prev)) throw Error("sequence not strictly increasing");
        prev = g;
      }
    }
  });
  run("POVMs positive, complete and of product form", [&] {
    for (int j = 1; j <= config.alices; ++j)
      validate_povm(build_party_povm(Role::Alice, j, config.alice, config.bob.theta));
    for (int k = 1; k <= config.bobs; ++k)
      validate_povm(build_party_povm(Role::Bob, k, config.bob, config.alice.theta));
  });
  run("Luders instruments complete", [&] {
    for (int j = 1; j <= config.alices; ++j)
      validate_instrument(
          luders_instrument(build_party_povm(Role::Alice, j, config.alice, config.bob.theta)));
    for (int k = 1; k <= config.bobs; ++k)
      validate_instrument(
          luders_instrument(build_party_povm(Role::Bob, k, config.bob, config.alice.theta)));
  });
  run("averaged channels trace-preserving", [&] {
    const Instrument instr =
        luders_instrument(build_party_povm(Role::Alice, 1, config.alice, config.bob.theta));
    for (int pair : {1, 2}) {
      CMatrix sum(4, 4);
      for (const CMatrix& k : averaged_party_channel(instr, pair).kraus)
        sum = sum + dagger(k) * k;
      if (max_abs_diff(sum, CMatrix::identity(4)) > kDefaultTol)
        throw Error("channel is not trace-preserving");
    }
  });
  run("CHSH brute force: max over 16 deterministic strategies is 3", [&] {
    if (chsh_prob_lhv_max() != 3.0) throw Error("enumeration did not give 3");
    for (int strat = 0; strat < 16; ++strat)
      if (chsh_strategy_value(strat & 1, (strat >> 1) & 1, (strat >> 2) & 1,
                              (strat >> 3) & 1) > 3)
        throw Error("a strategy attains 4");
    if (lhv_bound() != 96.0) throw Error("bound is not 96");
  });
  run("simulate_S(1,1) matches the closed form within 1e-6", [&] {
    const double sim = simulate_S(config, 1, 1).S;
    const double cf = closed_form_S(1, 1, config.alice, config.bob).S;
    if (std::abs(sim - cf) > 1e-6)
      throw Error("delta = " + format_g17(sim - cf));
  });
  run("factorized and 16x16 reference paths agree", [&] {
    const int j = std::min(config.alices, 2), k = std::min(config.bobs, 2);
    const JointDistribution fac = joint_distribution(config, j, k);
    const JointDistribution ref = joint_distribution_reference(config, j, k);
    for (int s = 0; s < 16; ++s)
      for (int oc = 0; oc < 16; ++oc) {
        const int m = (s >> 3) & 1, n = (s >> 2) & 1, mp = (s >> 1) & 1, np = s & 1;
        const int p = (oc >> 3) & 1, q = (oc >> 2) & 1, pp = (oc >> 1) & 1, qq = oc & 1;
        if (std::abs(fac.prob(m, n, mp, np, p, q, pp, qq) -
                     ref.prob(m, n, mp, np, p, q, pp, qq)) > 1e-9)
          throw Error("paths disagree");
      }
  });

  bool all = true;
  for (const Check& c : checks) all = all && c.passed;
  if (parse_format(o.format) == OutputFormat::Json) {
    nlohmann::json doc;
    doc["checks"] = nlohmann::json::array();
    for (const Check& c : checks)
      doc["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    doc["passed"] = all;
    emit(doc.dump(2) + "\n", o.output);
  } else {
    std::ostringstream os;
    for (const Check& c : checks) {
      os << (c.passed ? "[ok]   " : "[FAIL] ") << c.name;
      if (!c.passed) os << " -- " << c.detail;
      os << "\n";
    }
    os << (all ? "all checks passed\n" : "verification FAILED\n");
    emit(os.str(), o.output);
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact simulator and analysis toolkit for Bell tests between sequential"
               " pairs of observers (set SEQBELL_THREADS to cap parallelism)"};
  app.require_subcommand(1);

  CommonOpts topts;
  auto* table = app.add_subcommand("table", "closed-form S^(j,k) table");
  add_common(table, topts);

  CommonOpts gopts;
  int gammas_n = 2;
  auto* gammas = app.add_subcommand("gammas", "sharpness sequence for (epsilon, theta)");
  add_common(gammas, gopts, false);
  gammas->add_option("-n,--count", gammas_n, "sequence length")->check(CLI::PositiveNumber);

  CommonOpts sopts;
  int sim_j = 1, sim_k = 1;
  bool full_state = false;
  long sample_trials = 0;
  unsigned long long sim_seed = 1;
  auto* simulate = app.add_subcommand("simulate", "exact simulation of one (j,k) pair");
  add_common(simulate, sopts);
  simulate->add_option("-j,--pair-j", sim_j, "Alice index")->check(CLI::PositiveNumber);
  simulate->add_option("-k,--pair-k", sim_k, "Bob index")->check(CLI::PositiveNumber);
  simulate->add_flag("--full-state", full_state, "use the unfactorized 16x16 reference path");
  simulate->add_option("--sample", sample_trials,
                       "also sample this many Monte Carlo trajectories");
  simulate->add_option("--seed", sim_seed, "trajectory sampler seed");

  CommonOpts copts;
  auto* compare = app.add_subcommand("compare", "closed form vs simulation for all pairs");
  add_common(compare, copts);

  CommonOpts vopts;
  double vis_tol = 1e-9;
  auto* visibility = app.add_subcommand("visibility", "critical visibility of the weakest pair");
  add_common(visibility, vopts);
  visibility->add_option("--tol", vis_tol, "bisection tolerance")->check(CLI::PositiveNumber);

  CommonOpts veropts;
  auto* verify = app.add_subcommand("verify", "POVM validity, LHV brute force, sharpness-ladder checks");
  add_common(verify, veropts);

  int opt_J = 2, opt_K = 2, opt_grid = 200;
  long opt_budget = 500;
  unsigned long long opt_seed = 0;
  std::string opt_objective = "min";
  bool opt_asymmetric = false;
  std::string opt_format = "pretty", opt_output;
  auto* optimize = app.add_subcommand("optimize", "search (epsilon, theta) for the largest"
                                                  " worst-pair violation");
  optimize->add_option("-J,--alices", opt_J, "number of Alices")->check(CLI::PositiveNumber);
  optimize->add_option("-K,--bobs", opt_K, "number of Bobs")->check(CLI::PositiveNumber);
  optimize->add_option("--budget", opt_budget, "refinement evaluation budget")
      ->check(CLI::PositiveNumber);
  optimize->add_option("--seed", opt_seed, "simplex jitter seed");
  optimize->add_option("--grid", opt_grid, "coarse grid resolution per axis")
      ->check(CLI::PositiveNumber);
  optimize->add_option("--objective", opt_objective, "min|mean|first")
      ->check(CLI::IsMember({"min", "mean", "first"}));
  optimize->add_flag("--asymmetric", opt_asymmetric, "optimize the four side parameters");
  optimize->add_option("-f,--format", opt_format, "output format: pretty|csv|json")
      ->check(CLI::IsMember({"pretty", "csv", "json"}));
  optimize->add_option("-o,--output", opt_output, "write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (table->parsed()) return cmd_table(topts);
    if (gammas->parsed()) return cmd_gammas(gopts, gammas_n);
    if (simulate->parsed())
      return cmd_simulate(sopts, sim_j, sim_k, full_state, sample_trials, sim_seed);
    if (compare->parsed()) return cmd_compare(copts);
    if (visibility->parsed()) return cmd_visibility(vopts, vis_tol);
    if (verify->parsed()) return cmd_verify(veropts);
    if (optimize->parsed())
      return cmd_optimize(opt_J, opt_K, opt_budget, opt_seed, opt_grid, opt_objective,
                          opt_asymmetric, opt_format, opt_output);
  } catch (const InvalidParam& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PositionOutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotFound& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NoViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NoFeasiblePoint& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
