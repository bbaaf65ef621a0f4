#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace adgame {

enum class RiskScenario { UninvestedEndowment, AppropriatedValue, DefenderEndowment, All };

const char* risk_scenario_name(RiskScenario scenario);
std::optional<RiskScenario> risk_scenario_from_name(const std::string& name);

struct RiskSpec {
  RiskScenario scenario = RiskScenario::All;
  double p = 0.0;
};

struct ProductionSpec {
  long cost = 0;
  double benefit = 0.0;
};

struct GameSpec {
  long r_a = 2;
  long r_d = 2;
  double tie_win_prob = 0.0;
  std::optional<RiskSpec> risk;
  double warm_glow_a = 0.0;
  double warm_glow_d = 0.0;
  std::optional<ProductionSpec> production_a;
  std::optional<ProductionSpec> production_d;

  bool has_tie() const { return tie_win_prob > 0.0; }
  bool has_risk() const { return risk.has_value() && risk->p > 0.0; }
  bool has_warm_glow() const { return warm_glow_a > 0.0 || warm_glow_d > 0.0; }
  bool has_production() const { return production_a.has_value() || production_d.has_value(); }
  bool is_base() const { return !has_tie() && !has_risk() && !has_warm_glow() && !has_production(); }
};

// Every violated constraint, one human-readable message per violation naming
// the field and the constraint. Empty means the spec is valid.
std::vector<std::string> validate_spec(const GameSpec& spec);

struct ValidationError : std::runtime_error {
  explicit ValidationError(std::vector<std::string> problems);
  std::vector<std::string> problems;
};

void require_valid(const GameSpec& spec);

}  // namespace adgame
