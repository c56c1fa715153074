#include "seqbell/report.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace seqbell {

OutputFormat parse_format(const std::string& name) {
  if (name == "pretty") return OutputFormat::Pretty;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw InvalidParam("unknown output format '" + name + "' (pretty|csv|json)");
}

std::string format_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

static std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

static nlohmann::json side_json(const SideParameters& side) {
  return {{"epsilon", side.epsilon}, {"theta", side.theta}, {"gammas", side.gammas}};
}

nlohmann::json params_json(const ScenarioConfig& config) {
  return {{"alices", config.alices},
          {"bobs", config.bobs},
          {"side1", side_json(config.alice)},
          {"side2", side_json(config.bob)},
          {"visibility", config.visibility}};
}

//-------------------------------------------------------------------------
// table
//-------------------------------------------------------------------------

std::string render_table_pretty(const ScenarioConfig& config,
                                const std::vector<std::vector<double>>& values) {
  std::ostringstream os;
  os << "closed-form S^(j,k), " << config.alices << " Alices x " << config.bobs << " Bobs\n";
  os << "epsilon = " << config.alice.epsilon << ", theta = " << fixed(config.alice.theta, 6)
     << " (pi/4 - " << fixed(std::numbers::pi / 4 - config.alice.theta, 6) << ")";
  if (config.visibility != 1.0) os << ", visibility = " << config.visibility;
  os << "\n\n";
  os << "          ";
  for (int j = 1; j <= config.alices; ++j) {
    char head[32], cell[40];
    std::snprintf(head, sizeof head, "Alice(%d)", j);
    std::snprintf(cell, sizeof cell, "  %9s", head);
    os << cell;
  }
  os << "\n";
  int violated = 0;
  for (int k = 1; k <= config.bobs; ++k) {
    char head[32], cell[48];
    std::snprintf(head, sizeof head, "Bob(%d)", k);
    std::snprintf(cell, sizeof cell, "  %-8s", head);
    os << cell;
    for (int j = 1; j <= config.alices; ++j) {
      std::snprintf(cell, sizeof cell, "  %9.2f", values[k - 1][j - 1]);
      os << cell;
      if (values[k - 1][j - 1] > 96.0) ++violated;
    }
    os << "\n";
  }
  os << "\nLHV bound 96: violated by " << violated << " of " << config.alices * config.bobs
     << " pairs\n";
  return os.str();
}

std::string render_table_csv(const std::vector<std::vector<double>>& values) {
  std::ostringstream os;
  os << "j,k,S\n";
  for (size_t k = 0; k < values.size(); ++k)
    for (size_t j = 0; j < values[k].size(); ++j)
      os << j + 1 << "," << k + 1 << "," << format_g17(values[k][j]) << "\n";
  return os.str();
}

nlohmann::json table_json(const ScenarioConfig& config,
                          const std::vector<std::vector<double>>& values) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& row : values) {
    nlohmann::json vrow = nlohmann::json::array();
    for (double s : row) vrow.push_back(s > 96.0);
    violations.push_back(vrow);
  }
  return {{"params", params_json(config)},
          {"table", values},
          {"bound", 96},
          {"violations", violations}};
}

//-------------------------------------------------------------------------
// gammas
//-------------------------------------------------------------------------

std::string render_gammas_pretty(const GammaSequence& seq) {
  std::ostringstream os;
  os << "gamma sequence for epsilon = " << seq.epsilon << ", theta = " << fixed(seq.theta, 6)
     << "\n";
  for (size_t i = 0; i < seq.values.size(); ++i) {
    os << "  gamma_" << i + 1 << " = ";
    if (seq.values[i])
      os << fixed(*seq.values[i], 6) << "\n";
    else
      os << "infeasible\n";
  }
  os << "feasible prefix: " << seq.feasible_count << " of " << seq.values.size() << "\n";
  return os.str();
}

std::string render_gammas_csv(const GammaSequence& seq) {
  std::ostringstream os;
  os << "j,gamma,feasible\n";
  for (size_t i = 0; i < seq.values.size(); ++i) {
    os << i + 1 << ",";
    if (seq.values[i])
      os << format_g17(*seq.values[i]) << ",true\n";
    else
      os << ",false\n";
  }
  return os.str();
}

nlohmann::json gammas_json(const GammaSequence& seq) {
  nlohmann::json vals = nlohmann::json::array();
  for (const auto& v : seq.values) {
    if (v)
      vals.push_back(*v);
    else
      vals.push_back(nullptr);
  }
  return {{"params", {{"epsilon", seq.epsilon}, {"theta", seq.theta}}},
          {"gammas", vals},
          {"feasible_count", seq.feasible_count}};
}

//-------------------------------------------------------------------------
// simulate
//-------------------------------------------------------------------------

std::string render_simulate_pretty(const ScenarioConfig& config, int j, int k,
                                   const WitnessValue& sim, const WitnessValue& cf) {
  std::ostringstream os;
  os << "simulated S^(" << j << "," << k << ") = " << fixed(sim.S, 6) << "\n";
  os << "  pair-1 term " << fixed(sim.pair1_term, 6) << ", pair-2 term "
     << fixed(sim.pair2_term, 6) << ", baseline " << sim.baseline << "\n";
  os << "  closed form " << fixed(cf.S, 6) << ", delta " << format_g17(sim.S - cf.S) << "\n";
  if (config.visibility != 1.0) os << "  visibility " << config.visibility << "\n";
  return os.str();
}

std::string render_simulate_csv(int j, int k, const WitnessValue& sim, const WitnessValue& cf) {
  std::ostringstream os;
  os << "j,k,S,closed_form,simulated,delta\n";
  os << j << "," << k << "," << format_g17(sim.S) << "," << format_g17(cf.S) << ","
     << format_g17(sim.S) << "," << format_g17(sim.S - cf.S) << "\n";
  return os.str();
}

nlohmann::json simulate_json(const ScenarioConfig& config, int j, int k,
                             const WitnessValue& sim, const WitnessValue& cf) {
  return {{"params", params_json(config)},
          {"pair", {j, k}},
          {"S", sim.S},
          {"pair1_term", sim.pair1_term},
          {"pair2_term", sim.pair2_term},
          {"closed_form", cf.S},
          {"delta", sim.S - cf.S}};
}

//-------------------------------------------------------------------------
// compare
//-------------------------------------------------------------------------

std::string render_compare_pretty(const ScenarioConfig& config, const ComparisonReport& report) {
  std::ostringstream os;
  os << "closed form vs exact simulation, " << config.alices << " Alices x " << config.bobs
     << " Bobs\n";
  os << "  pair   closed_form    simulated        delta   status\n";
  for (const ComparisonCell& c : report.cells) {
    char line[128];
    std::snprintf(line, sizeof line, "  (%d,%d) %12.6f %12.6f %12.3e   %s\n", c.j, c.k,
                  c.closed_form, c.simulated, c.delta, c.status.c_str());
    os << line;
  }
  os << "max |delta| = " << format_g17(report.max_abs_deviation) << "\n";
  return os.str();
}

std::string render_compare_csv(const ComparisonReport& report) {
  std::ostringstream os;
  os << "j,k,S,closed_form,simulated,delta\n";
  for (const ComparisonCell& c : report.cells)
    os << c.j << "," << c.k << "," << format_g17(c.simulated) << ","
       << format_g17(c.closed_form) << "," << format_g17(c.simulated) << ","
       << format_g17(c.delta) << "\n";
  return os.str();
}

nlohmann::json compare_json(const ScenarioConfig& config, const ComparisonReport& report) {
  nlohmann::json cells = nlohmann::json::array();
  for (const ComparisonCell& c : report.cells)
    cells.push_back({{"j", c.j},
                     {"k", c.k},
                     {"closed_form", c.closed_form},
                     {"simulated", c.simulated},
                     {"delta", c.delta},
                     {"pair1_delta", c.pair1_delta},
                     {"pair2_delta", c.pair2_delta},
                     {"status", c.status}});
  return {{"params", params_json(config)},
          {"bound", 96},
          {"cells", cells},
          {"max_abs_deviation", report.max_abs_deviation}};
}

//-------------------------------------------------------------------------
// optimize / visibility
//-------------------------------------------------------------------------

static const char* objective_name(Objective objective) {
  switch (objective) {
    case Objective::MinPair: return "min_pair";
    case Objective::MeanPair: return "mean_pair";
    case Objective::FirstPair: return "first_pair";
  }
  return "min_pair";
}

std::string render_optimize_pretty(int J, int K, const OptimizationResult& result) {
  std::ostringstream os;
  os << "optimum for " << J << " Alices x " << K << " Bobs\n";
  os << "  epsilon = " << fixed(result.epsilon, 6) << ", theta = " << fixed(result.theta, 6)
     << " (pi/4 - " << fixed(std::numbers::pi / 4 - result.theta, 6) << ")\n";
  if (!result.symmetric)
    os << "  side 2: epsilon = " << fixed(result.epsilon2, 6) << ", theta = "
       << fixed(result.theta2, 6) << "\n";
  os << "  min S = " << fixed(result.min_S, 6) << " at pair (" << result.argmin_j << ","
     << result.argmin_k << ")\n";
  os << "  objective evaluations = " << result.iterations << "\n";
  for (const auto& row : result.table) {
    os << "   ";
    for (double s : row) os << " " << fixed(s, 4);
    os << "\n";
  }
  return os.str();
}

std::string render_optimize_csv(const OptimizationResult& result) {
  std::ostringstream os;
  os << "epsilon,theta,epsilon2,theta2,min_S,argmin_j,argmin_k,iterations\n";
  os << format_g17(result.epsilon) << "," << format_g17(result.theta) << ","
     << format_g17(result.epsilon2) << "," << format_g17(result.theta2) << ","
     << format_g17(result.min_S) << "," << result.argmin_j << "," << result.argmin_k << ","
     << result.iterations << "\n";
  return os.str();
}

nlohmann::json optimize_json(int J, int K, Objective objective,
                             const OptimizationResult& result) {
  return {{"alices", J},
          {"bobs", K},
          {"objective", objective_name(objective)},
          {"symmetric", result.symmetric},
          {"epsilon", result.epsilon},
          {"theta", result.theta},
          {"epsilon2", result.epsilon2},
          {"theta2", result.theta2},
          {"theta_offset", std::numbers::pi / 4 - result.theta},
          {"min_S", result.min_S},
          {"argmin", {result.argmin_j, result.argmin_k}},
          {"iterations", result.iterations},
          {"table", result.table}};
}

std::string render_visibility_pretty(double v_critical, double s_min) {
  std::ostringstream os;
  os << "critical visibility = " << fixed(v_critical, 6) << "\n";
  os << "  S_min at v=1: " << fixed(s_min, 6) << ", algebraic 32/(S_min-64) = "
     << fixed(32.0 / (s_min - 64.0), 6) << "\n";
  return os.str();
}

nlohmann::json visibility_json(const ScenarioConfig& config, double v_critical, double s_min) {
  return {{"params", params_json(config)},
          {"critical_visibility", v_critical},
          {"s_min", s_min},
          {"algebraic", 32.0 / (s_min - 64.0)}};
}

}  // namespace seqbell
