#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "seqbell/gammaseq.hpp"
#include "seqbell/optimizer.hpp"
#include "seqbell/simulator.hpp"

namespace seqbell {

enum class OutputFormat { Pretty, Csv, Json };

OutputFormat parse_format(const std::string& name);  // throws InvalidParam

// full-precision text for csv cells
std::string format_g17(double x);

nlohmann::json params_json(const ScenarioConfig& config);

// closed-form S table, values[k-1][j-1] (Bobs as rows)
std::string render_table_pretty(const ScenarioConfig& config,
                                const std::vector<std::vector<double>>& values);
std::string render_table_csv(const std::vector<std::vector<double>>& values);
nlohmann::json table_json(const ScenarioConfig& config,
                          const std::vector<std::vector<double>>& values);

std::string render_gammas_pretty(const GammaSequence& seq);
std::string render_gammas_csv(const GammaSequence& seq);
nlohmann::json gammas_json(const GammaSequence& seq);

std::string render_simulate_pretty(const ScenarioConfig& config, int j, int k,
                                   const WitnessValue& sim, const WitnessValue& cf);
std::string render_simulate_csv(int j, int k, const WitnessValue& sim, const WitnessValue& cf);
nlohmann::json simulate_json(const ScenarioConfig& config, int j, int k,
                             const WitnessValue& sim, const WitnessValue& cf);

std::string render_compare_pretty(const ScenarioConfig& config, const ComparisonReport& report);
// header pinned: j,k,S,closed_form,simulated,delta (S repeats the simulated value)
std::string render_compare_csv(const ComparisonReport& report);
nlohmann::json compare_json(const ScenarioConfig& config, const ComparisonReport& report);

std::string render_optimize_pretty(int J, int K, const OptimizationResult& result);
std::string render_optimize_csv(const OptimizationResult& result);
nlohmann::json optimize_json(int J, int K, Objective objective, const OptimizationResult& result);

std::string render_visibility_pretty(double v_critical, double s_min);
nlohmann::json visibility_json(const ScenarioConfig& config, double v_critical, double s_min);

}  // namespace seqbell
