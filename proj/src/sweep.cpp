#include "adgame/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "adgame/closed_form.hpp"
#include "adgame/json_io.hpp"
#include "adgame/parallel.hpp"
#include "adgame/solve.hpp"
#include "adgame/tables.hpp"

namespace adgame {

const char* sweep_kind_name(SweepKind kind) {
  switch (kind) {
    case SweepKind::LStarConvergence: return "lstar";
    case SweepKind::EndowmentRatio: return "ratio";
    case SweepKind::Risk: return "risk";
    case SweepKind::WarmGlow: return "warmglow";
    case SweepKind::ProductionGrid: return "production";
  }
  return "?";
}

std::optional<SweepKind> sweep_kind_from_name(const std::string& name) {
  if (name == "lstar") return SweepKind::LStarConvergence;
  if (name == "ratio") return SweepKind::EndowmentRatio;
  if (name == "risk") return SweepKind::Risk;
  if (name == "warmglow") return SweepKind::WarmGlow;
  if (name == "production") return SweepKind::ProductionGrid;
  return std::nullopt;
}

const char* warm_glow_affected_name(WarmGlowAffected affected) {
  switch (affected) {
    case WarmGlowAffected::None: return "None";
    case WarmGlowAffected::AttackerOnly: return "AttackerOnly";
    case WarmGlowAffected::DefenderOnly: return "DefenderOnly";
    case WarmGlowAffected::Both: return "Both";
  }
  return "?";
}

std::optional<WarmGlowAffected> warm_glow_affected_from_name(const std::string& name) {
  if (name == "None") return WarmGlowAffected::None;
  if (name == "AttackerOnly") return WarmGlowAffected::AttackerOnly;
  if (name == "DefenderOnly") return WarmGlowAffected::DefenderOnly;
  if (name == "Both") return WarmGlowAffected::Both;
  return std::nullopt;
}

const char* production_scenario_name(ProductionScenario scenario) {
  switch (scenario) {
    case ProductionScenario::AttackerOnly: return "AttackerOnly";
    case ProductionScenario::DefenderOnly: return "DefenderOnly";
    case ProductionScenario::Both: return "Both";
  }
  return "?";
}

std::optional<ProductionScenario> production_scenario_from_name(const std::string& name) {
  if (name == "AttackerOnly") return ProductionScenario::AttackerOnly;
  if (name == "DefenderOnly") return ProductionScenario::DefenderOnly;
  if (name == "Both") return ProductionScenario::Both;
  return std::nullopt;
}

namespace {

std::string opt_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

// One grid point: axis cells are fixed up front, metric cells come from a
// verified solve, and failures/skips stay in the table as labeled rows.
struct PointRow {
  std::vector<std::string> cells;
  int outcome = 0;  // 0 ok, 1 failed, 2 skipped
};

template <typename MetricsFn>
PointRow run_point(const GameSpec& spec, std::vector<std::string> axis_cells, long metric_count,
                   MetricsFn metrics) {
  PointRow row;
  row.cells = std::move(axis_cells);
  try {
    SolveOutcome outcome = solve_game(spec);
    std::vector<std::string> cells = metrics(outcome);
    row.cells.insert(row.cells.end(), cells.begin(), cells.end());
    row.cells.push_back(solve_method_name(outcome.method));
    row.cells.push_back("ok");
    return row;
  } catch (const ValidationError&) {
    row.outcome = 2;
  } catch (const std::exception&) {
    row.outcome = 1;
  }
  for (long k = 0; k < metric_count; ++k) row.cells.emplace_back();
  row.cells.emplace_back();
  row.cells.push_back(row.outcome == 2 ? "skipped" : "failed");
  return row;
}

void finish(SweepTable& table, std::vector<PointRow> rows) {
  for (auto& r : rows) {
    if (r.outcome == 1) ++table.failures;
    if (r.outcome == 2) ++table.skipped;
    table.rows.push_back(std::move(r.cells));
  }
}

}  // namespace

SweepTable sweep_lstar(long r_max) {
  if (r_max < 2) throw std::domain_error("rmax must be >= 2");
  SweepTable table;
  table.kind = SweepKind::LStarConvergence;
  table.columns = {"r", "l_star", "l_star_over_r", "method", "status"};
  std::vector<long> crossings = upper_bound_table(r_max);
  for (long r = 2; r <= r_max; ++r) {
    long l = crossings[r];
    Profile<double> p = base_profile_for_crossing(r, r, l);
    GameSpec spec;
    spec.r_a = r;
    spec.r_d = r;
    auto check = verify_structural<double>(make_structural<double>(spec), p, 1e-9);
    bool ok = check.is_equilibrium;
    if (!ok) ++table.failures;
    table.rows.push_back({std::to_string(r), std::to_string(l),
                          format_double(static_cast<double>(l) / static_cast<double>(r)),
                          "closed_form", ok ? "ok" : "failed"});
  }
  return table;
}

SweepTable sweep_ratio(long r_d, const std::vector<double>& ratios, unsigned jobs) {
  if (r_d < 2) throw std::domain_error("rd must be >= 2");
  if (ratios.empty()) throw std::domain_error("ratios must be non-empty");
  SweepTable table;
  table.kind = SweepKind::EndowmentRatio;
  table.columns = {"rho",          "r_a",   "r_d",           "attack_prob",
                   "attack_force", "e_a_over_r_a", "e_d_over_r_d", "social_waste",
                   "p_win",        "attacker_share", "method",      "status"};
  std::vector<double> axis = ratios;
  std::sort(axis.begin(), axis.end());
  std::vector<PointRow> rows(axis.size());
  parallel_for(axis.size(), jobs, [&](std::size_t k) {
    double rho = axis[k];
    long r_a = 0;
    if (std::isfinite(rho) && rho > 0) {
      r_a = static_cast<long>(std::floor(rho * static_cast<double>(r_d) + 0.5));
    }
    GameSpec spec;
    spec.r_a = r_a;
    spec.r_d = r_d;
    rows[k] = run_point(spec, {format_double(rho), std::to_string(r_a), std::to_string(r_d)}, 7,
                        [&](const SolveOutcome& o) {
                          return std::vector<std::string>{
                              format_double(o.report.attack_prob),
                              opt_cell(o.report.attack_force),
                              format_double(o.report.e_a / static_cast<double>(spec.r_a)),
                              format_double(o.report.e_d / static_cast<double>(spec.r_d)),
                              format_double(o.report.social_waste),
                              format_double(o.report.p_win),
                              format_double(o.report.attacker_share)};
                        });
  });
  finish(table, std::move(rows));
  return table;
}

SweepTable sweep_risk(long r, const std::vector<double>& p_values,
                      const std::vector<RiskScenario>& scenarios, unsigned jobs) {
  if (r < 2) throw std::domain_error("r must be >= 2");
  if (p_values.empty() || scenarios.empty()) {
    throw std::domain_error("risk sweep needs at least one p and one scenario");
  }
  SweepTable table;
  table.kind = SweepKind::Risk;
  table.columns = {"scenario", "p", "e_a", "e_d", "p_win", "attacker_share", "method", "status"};
  std::vector<RiskScenario> scen = scenarios;
  std::sort(scen.begin(), scen.end(), [](RiskScenario x, RiskScenario y) {
    return std::string(risk_scenario_name(x)) < risk_scenario_name(y);
  });
  std::vector<double> ps = p_values;
  std::sort(ps.begin(), ps.end());
  std::vector<GameSpec> specs;
  std::vector<std::vector<std::string>> axes;
  for (RiskScenario s : scen) {
    for (double p : ps) {
      GameSpec spec;
      spec.r_a = r;
      spec.r_d = r;
      spec.risk = RiskSpec{s, p};
      specs.push_back(spec);
      axes.push_back({risk_scenario_name(s), format_double(p)});
    }
  }
  std::vector<PointRow> rows(specs.size());
  parallel_for(specs.size(), jobs, [&](std::size_t k) {
    rows[k] = run_point(specs[k], std::move(axes[k]), 4, [](const SolveOutcome& o) {
      return std::vector<std::string>{format_double(o.report.e_a), format_double(o.report.e_d),
                                      format_double(o.report.p_win),
                                      format_double(o.report.attacker_share)};
    });
  });
  finish(table, std::move(rows));
  return table;
}

SweepTable sweep_warm_glow(long r, const std::vector<double>& w_values,
                           const std::vector<WarmGlowAffected>& affected, unsigned jobs) {
  if (r < 2) throw std::domain_error("r must be >= 2");
  if (w_values.empty() || affected.empty()) {
    throw std::domain_error("warm-glow sweep needs at least one w and one affected side");
  }
  SweepTable table;
  table.kind = SweepKind::WarmGlow;
  table.columns = {"affected", "w", "e_a", "e_d", "p_win", "attacker_share", "method", "status"};
  std::vector<WarmGlowAffected> sides = affected;
  std::sort(sides.begin(), sides.end(), [](WarmGlowAffected x, WarmGlowAffected y) {
    return std::string(warm_glow_affected_name(x)) < warm_glow_affected_name(y);
  });
  std::vector<double> ws = w_values;
  std::sort(ws.begin(), ws.end());
  std::vector<GameSpec> specs;
  std::vector<std::vector<std::string>> axes;
  for (WarmGlowAffected side : sides) {
    for (double w : ws) {
      GameSpec spec;
      spec.r_a = r;
      spec.r_d = r;
      if (side == WarmGlowAffected::AttackerOnly || side == WarmGlowAffected::Both) {
        spec.warm_glow_a = w;
      }
      if (side == WarmGlowAffected::DefenderOnly || side == WarmGlowAffected::Both) {
        spec.warm_glow_d = w;
      }
      specs.push_back(spec);
      axes.push_back({warm_glow_affected_name(side), format_double(w)});
    }
  }
  std::vector<PointRow> rows(specs.size());
  parallel_for(specs.size(), jobs, [&](std::size_t k) {
    rows[k] = run_point(specs[k], std::move(axes[k]), 4, [](const SolveOutcome& o) {
      return std::vector<std::string>{format_double(o.report.e_a), format_double(o.report.e_d),
                                      format_double(o.report.p_win),
                                      format_double(o.report.attacker_share)};
    });
  });
  finish(table, std::move(rows));
  return table;
}

SweepTable sweep_production(long r, const std::vector<long>& c_values,
                            const std::vector<double>& q_values, ProductionScenario scenario,
                            unsigned jobs) {
  if (r < 2) throw std::domain_error("r must be >= 2");
  if (c_values.empty() || q_values.empty()) {
    throw std::domain_error("production sweep needs at least one c and one q");
  }
  SweepTable table;
  table.kind = SweepKind::ProductionGrid;
  table.columns = {"scenario", "c",     "q",      "e_a_over_r", "e_d_over_r",
                   "social_waste", "p_win", "method", "status"};
  std::vector<long> cs = c_values;
  std::sort(cs.begin(), cs.end());
  std::vector<double> qs = q_values;
  std::sort(qs.begin(), qs.end());
  std::vector<GameSpec> specs;
  std::vector<std::vector<std::string>> axes;
  for (long c : cs) {
    for (double q : qs) {
      GameSpec spec;
      spec.r_a = r;
      spec.r_d = r;
      ProductionSpec prod{c, static_cast<double>(c) + q};
      if (scenario == ProductionScenario::AttackerOnly || scenario == ProductionScenario::Both) {
        spec.production_a = prod;
      }
      if (scenario == ProductionScenario::DefenderOnly || scenario == ProductionScenario::Both) {
        spec.production_d = prod;
      }
      specs.push_back(spec);
      axes.push_back({production_scenario_name(scenario), std::to_string(c), format_double(q)});
    }
  }
  std::vector<PointRow> rows(specs.size());
  parallel_for(specs.size(), jobs, [&](std::size_t k) {
    double scale = static_cast<double>(r);
    rows[k] = run_point(specs[k], std::move(axes[k]), 4, [scale](const SolveOutcome& o) {
      return std::vector<std::string>{format_double(o.report.e_a / scale),
                                      format_double(o.report.e_d / scale),
                                      format_double(o.report.social_waste),
                                      format_double(o.report.p_win)};
    });
  });
  finish(table, std::move(rows));
  return table;
}

namespace {

void write_field(std::ostream& out, const std::string& field) {
  bool needs_quotes = field.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quotes) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

void write_csv(const SweepTable& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    write_field(out, table.columns[c]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      write_field(out, row[c]);
    }
    out << '\n';
  }
}

std::string to_csv(const SweepTable& table) {
  std::ostringstream out;
  write_csv(table, out);
  return out.str();
}

}  // namespace adgame
