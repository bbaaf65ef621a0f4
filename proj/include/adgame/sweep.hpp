#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "adgame/game_spec.hpp"

namespace adgame {

enum class SweepKind { LStarConvergence, EndowmentRatio, Risk, WarmGlow, ProductionGrid };

const char* sweep_kind_name(SweepKind kind);
std::optional<SweepKind> sweep_kind_from_name(const std::string& name);

enum class WarmGlowAffected { None, AttackerOnly, DefenderOnly, Both };
const char* warm_glow_affected_name(WarmGlowAffected affected);
std::optional<WarmGlowAffected> warm_glow_affected_from_name(const std::string& name);

enum class ProductionScenario { AttackerOnly, DefenderOnly, Both };
const char* production_scenario_name(ProductionScenario scenario);
std::optional<ProductionScenario> production_scenario_from_name(const std::string& name);

// Rows are fully formatted strings (numbers via the 17-significant-digit
// formatter), ordered lexicographically by the axis columns, one row per grid
// point including failed and skipped ones. Output is byte-identical across
// runs and job counts.
struct SweepTable {
  SweepKind kind = SweepKind::LStarConvergence;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  long failures = 0;
  long skipped = 0;
};

SweepTable sweep_lstar(long r_max);
SweepTable sweep_ratio(long r_d, const std::vector<double>& ratios, unsigned jobs = 1);
SweepTable sweep_risk(long r, const std::vector<double>& p_values,
                      const std::vector<RiskScenario>& scenarios, unsigned jobs = 1);
SweepTable sweep_warm_glow(long r, const std::vector<double>& w_values,
                           const std::vector<WarmGlowAffected>& affected, unsigned jobs = 1);
SweepTable sweep_production(long r, const std::vector<long>& c_values,
                            const std::vector<double>& q_values, ProductionScenario scenario,
                            unsigned jobs = 1);

// RFC 4180: comma separated, LF line endings, fields quoted only when needed.
void write_csv(const SweepTable& table, std::ostream& out);
std::string to_csv(const SweepTable& table);

}  // namespace adgame
