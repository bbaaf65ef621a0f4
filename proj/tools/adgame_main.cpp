#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "adgame/closed_form.hpp"
#include "adgame/json_io.hpp"
#include "adgame/parallel.hpp"
#include "adgame/solve.hpp"
#include "adgame/sweep.hpp"
#include "adgame/tables.hpp"

namespace {

constexpr long kDenseVerifyGuard = 4'000'000;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw adgame::ParseError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

long parse_long(const std::string& text) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer: '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("not an integer: '" + text + "'");
  return v;
}

// Accepts "start:end", "start:end:step", "x,y,z" or a single value.
std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    auto parts = split(text, ':');
    if (parts.size() < 2 || parts.size() > 3) {
      throw std::invalid_argument("range must be start:end or start:end:step");
    }
    double start = parse_double(parts[0]);
    double end = parse_double(parts[1]);
    double step = parts.size() == 3 ? parse_double(parts[2]) : 1.0;
    if (!(step > 0)) throw std::invalid_argument("range step must be positive");
    if (end < start) throw std::invalid_argument("range end must be >= start");
    for (double v = start; v <= end + step * 1e-9; v += step) out.push_back(v);
    return out;
  }
  for (const auto& piece : split(text, ',')) {
    if (piece.empty()) throw std::invalid_argument("empty entry in list '" + text + "'");
    out.push_back(parse_double(piece));
  }
  return out;
}

std::vector<long> parse_long_list(const std::string& text) {
  std::vector<long> out;
  if (text.find(':') != std::string::npos) {
    auto parts = split(text, ':');
    if (parts.size() < 2 || parts.size() > 3) {
      throw std::invalid_argument("range must be start:end or start:end:step");
    }
    long start = parse_long(parts[0]);
    long end = parse_long(parts[1]);
    long step = parts.size() == 3 ? parse_long(parts[2]) : 1;
    if (step <= 0) throw std::invalid_argument("range step must be positive");
    if (end < start) throw std::invalid_argument("range end must be >= start");
    for (long v = start; v <= end; v += step) out.push_back(v);
    return out;
  }
  for (const auto& piece : split(text, ',')) {
    if (piece.empty()) throw std::invalid_argument("empty entry in list '" + text + "'");
    out.push_back(parse_long(piece));
  }
  return out;
}

adgame::ProductionSpec parse_production_flag(const std::string& text, const char* flag) {
  auto parts = split(text, ',');
  if (parts.size() != 2) {
    throw std::invalid_argument(std::string(flag) + " expects 'cost,benefit'");
  }
  adgame::ProductionSpec prod;
  prod.cost = parse_long(parts[0]);
  prod.benefit = parse_double(parts[1]);
  return prod;
}

struct SolveArgs {
  std::string spec_path;
  long r_a = -1;
  long r_d = -1;
  double tie = 0.0;
  std::string risk_scenario;
  double risk_p = 0.0;
  double wg_a = 0.0;
  double wg_d = 0.0;
  std::string prod_a;
  std::string prod_d;
  double eps = 1e-9;
  bool inline_used(const CLI::App* cmd) const {
    for (const char* name : {"--ra", "--rd", "--tie", "--risk-scenario", "--risk-p", "--wg-a",
                             "--wg-d", "--prod-a", "--prod-d"}) {
      if (cmd->count(name) > 0) return true;
    }
    return false;
  }
};

adgame::GameSpec spec_from_args(const SolveArgs& args, const CLI::App* cmd) {
  if (!args.spec_path.empty()) {
    if (args.inline_used(cmd)) {
      throw std::invalid_argument("--spec and inline game flags are mutually exclusive");
    }
    return adgame::parse_game_spec_json(read_file(args.spec_path));
  }
  if (cmd->count("--ra") == 0) throw std::invalid_argument("either --spec or --ra is required");
  adgame::GameSpec spec;
  spec.r_a = args.r_a;
  spec.r_d = cmd->count("--rd") ? args.r_d : args.r_a;
  spec.tie_win_prob = args.tie;
  if (cmd->count("--risk-scenario")) {
    auto scenario = adgame::risk_scenario_from_name(args.risk_scenario);
    if (!scenario) throw std::invalid_argument("unknown risk scenario '" + args.risk_scenario + "'");
    spec.risk = adgame::RiskSpec{*scenario, args.risk_p};
  } else if (cmd->count("--risk-p")) {
    throw std::invalid_argument("--risk-p requires --risk-scenario");
  }
  spec.warm_glow_a = args.wg_a;
  spec.warm_glow_d = args.wg_d;
  if (cmd->count("--prod-a")) spec.production_a = parse_production_flag(args.prod_a, "--prod-a");
  if (cmd->count("--prod-d")) spec.production_d = parse_production_flag(args.prod_d, "--prod-d");
  return spec;
}

int run_solve(const SolveArgs& args, const CLI::App* cmd) {
  adgame::GameSpec spec = spec_from_args(args, cmd);
  adgame::SolveOutcome outcome = adgame::solve_game(spec, args.eps);
  std::cout << adgame::solve_outcome_to_json(outcome, args.eps) << "\n";
  return 0;
}

struct VerifyArgs {
  std::string spec_path;
  std::string profile_path;
  double eps = 1e-9;
};

int run_verify(const VerifyArgs& args) {
  adgame::GameSpec spec = adgame::parse_game_spec_json(read_file(args.spec_path));
  adgame::require_valid(spec);
  adgame::Profile<double> profile = adgame::parse_profile_json(read_file(args.profile_path));
  adgame::VerificationReport<double> report;
  if ((spec.r_a + 1) * (spec.r_d + 1) <= kDenseVerifyGuard) {
    auto tables = adgame::build_payoff_tables<double>(spec);
    report = adgame::verify_equilibrium<double>(tables, profile, args.eps);
  } else {
    auto g = adgame::make_structural<double>(spec);
    report = adgame::verify_structural<double>(g, profile, args.eps);
  }
  std::cout << adgame::verification_to_json(report, args.eps) << "\n";
  return report.is_equilibrium ? 0 : 3;
}

struct SweepArgs {
  std::string kind;
  long rmax = -1;
  long rd = -1;
  long r = -1;
  std::string ratios;
  std::string p_values;
  std::string scenarios;
  std::string w_values;
  std::string affected;
  std::string c_values;
  std::string q_values;
  std::string scenario;
  std::string out_path;
  bool strict = false;
  unsigned jobs = 0;
};

unsigned effective_jobs(unsigned flag_value) {
  if (const char* env = std::getenv("ADGAME_JOBS")) {
    long v = parse_long(env);
    if (v < 0) throw std::invalid_argument("ADGAME_JOBS must be >= 0");
    return adgame::resolve_jobs(static_cast<unsigned>(v));
  }
  return adgame::resolve_jobs(flag_value);
}

int run_sweep(const SweepArgs& args, const CLI::App* cmd) {
  auto kind = adgame::sweep_kind_from_name(args.kind);
  if (!kind) throw std::invalid_argument("unknown sweep kind '" + args.kind + "'");
  unsigned jobs = effective_jobs(args.jobs);

  auto require_flag = [&](const char* flag, const char* why) {
    if (cmd->count(flag) == 0) {
      throw std::invalid_argument(std::string(flag) + " is required for " + why);
    }
  };

  adgame::SweepTable table;
  switch (*kind) {
    case adgame::SweepKind::LStarConvergence: {
      require_flag("--rmax", "kind 'lstar'");
      table = adgame::sweep_lstar(args.rmax);
      break;
    }
    case adgame::SweepKind::EndowmentRatio: {
      require_flag("--rd", "kind 'ratio'");
      require_flag("--ratios", "kind 'ratio'");
      table = adgame::sweep_ratio(args.rd, parse_double_list(args.ratios), jobs);
      break;
    }
    case adgame::SweepKind::Risk: {
      require_flag("--r", "kind 'risk'");
      require_flag("--p", "kind 'risk'");
      require_flag("--scenarios", "kind 'risk'");
      std::vector<adgame::RiskScenario> scen;
      for (const auto& name : split(args.scenarios, ',')) {
        auto s = adgame::risk_scenario_from_name(name);
        if (!s) throw std::invalid_argument("unknown risk scenario '" + name + "'");
        scen.push_back(*s);
      }
      table = adgame::sweep_risk(args.r, parse_double_list(args.p_values), scen, jobs);
      break;
    }
    case adgame::SweepKind::WarmGlow: {
      require_flag("--r", "kind 'warmglow'");
      require_flag("--w", "kind 'warmglow'");
      require_flag("--affected", "kind 'warmglow'");
      std::vector<adgame::WarmGlowAffected> sides;
      for (const auto& name : split(args.affected, ',')) {
        auto s = adgame::warm_glow_affected_from_name(name);
        if (!s) throw std::invalid_argument("unknown affected side '" + name + "'");
        sides.push_back(*s);
      }
      table = adgame::sweep_warm_glow(args.r, parse_double_list(args.w_values), sides, jobs);
      break;
    }
    case adgame::SweepKind::ProductionGrid: {
      require_flag("--r", "kind 'production'");
      require_flag("--c", "kind 'production'");
      require_flag("--q", "kind 'production'");
      require_flag("--scenario", "kind 'production'");
      auto scen = adgame::production_scenario_from_name(args.scenario);
      if (!scen) throw std::invalid_argument("unknown production scenario '" + args.scenario + "'");
      table = adgame::sweep_production(args.r, parse_long_list(args.c_values),
                                       parse_double_list(args.q_values), *scen, jobs);
      break;
    }
  }

  std::ostringstream summary;
  summary << "{\"kind\":\"" << adgame::sweep_kind_name(table.kind) << "\""
          << ",\"rows\":" << table.rows.size() << ",\"failures\":" << table.failures
          << ",\"skipped\":" << table.skipped;
  if (!args.out_path.empty()) summary << ",\"out\":\"" << args.out_path << "\"";
  summary << "}";

  if (!args.out_path.empty()) {
    std::ofstream out(args.out_path, std::ios::binary);
    if (!out) throw adgame::ParseError("cannot write file: " + args.out_path);
    adgame::write_csv(table, out);
    std::cout << summary.str() << "\n";
  } else {
    adgame::write_csv(table, std::cout);
    std::cerr << summary.str() << "\n";
  }
  if (args.strict && table.failures > 0) return 3;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"attacker-defender resource games: solve, verify, sweep"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one game and print JSON");
  solve_cmd->add_option("--spec", solve_args.spec_path, "spec JSON file");
  solve_cmd->add_option("--ra", solve_args.r_a, "attacker endowment");
  solve_cmd->add_option("--rd", solve_args.r_d, "defender endowment (defaults to --ra)");
  solve_cmd->add_option("--tie", solve_args.tie, "attacker win probability on ties");
  solve_cmd->add_option("--risk-scenario", solve_args.risk_scenario,
                        "UninvestedEndowment|AppropriatedValue|DefenderEndowment|All");
  solve_cmd->add_option("--risk-p", solve_args.risk_p, "loss probability for the risk scenario");
  solve_cmd->add_option("--wg-a", solve_args.wg_a, "attacker warm glow");
  solve_cmd->add_option("--wg-d", solve_args.wg_d, "defender warm glow");
  solve_cmd->add_option("--prod-a", solve_args.prod_a, "attacker production 'cost,benefit'");
  solve_cmd->add_option("--prod-d", solve_args.prod_d, "defender production 'cost,benefit'");
  solve_cmd->add_option("--eps", solve_args.eps, "verification tolerance");

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand("verify", "check a profile against a game");
  verify_cmd->add_option("--spec", verify_args.spec_path, "spec JSON file")->required();
  verify_cmd->add_option("--profile", verify_args.profile_path, "profile JSON file")->required();
  verify_cmd->add_option("--eps", verify_args.eps, "verification tolerance");

  SweepArgs sweep_args;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "parameter sweep to CSV");
  sweep_cmd->add_option("kind", sweep_args.kind, "lstar|ratio|risk|warmglow|production")
      ->required();
  sweep_cmd->add_option("--rmax", sweep_args.rmax, "largest endowment (lstar)");
  sweep_cmd->add_option("--rd", sweep_args.rd, "defender endowment (ratio)");
  sweep_cmd->add_option("--ratios", sweep_args.ratios, "endowment ratios, list or range (ratio)");
  sweep_cmd->add_option("--r", sweep_args.r, "shared endowment (risk, warmglow, production)");
  sweep_cmd->add_option("--p", sweep_args.p_values, "loss probabilities, list or range (risk)");
  sweep_cmd->add_option("--scenarios", sweep_args.scenarios, "risk scenario names (risk)");
  sweep_cmd->add_option("--w", sweep_args.w_values, "warm-glow sizes, list or range (warmglow)");
  sweep_cmd->add_option("--affected", sweep_args.affected,
                        "None|AttackerOnly|DefenderOnly|Both list (warmglow)");
  sweep_cmd->add_option("--c", sweep_args.c_values, "production costs, list or range (production)");
  sweep_cmd->add_option("--q", sweep_args.q_values,
                        "net production benefits, list or range (production)");
  sweep_cmd->add_option("--scenario", sweep_args.scenario,
                        "AttackerOnly|DefenderOnly|Both (production)");
  sweep_cmd->add_option("--out", sweep_args.out_path, "write CSV here, summary JSON to stdout");
  sweep_cmd->add_flag("--strict", sweep_args.strict, "exit 3 when any row failed");
  sweep_cmd->add_option("--jobs", sweep_args.jobs, "worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve_args, solve_cmd);
    if (verify_cmd->parsed()) return run_verify(verify_args);
    if (sweep_cmd->parsed()) return run_sweep(sweep_args, sweep_cmd);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const adgame::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const adgame::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const adgame::SolveFailure& e) {
    std::cerr << e.what() << "\n";
    for (const auto& note : e.notes) std::cerr << "  " << note << "\n";
    return 3;
  } catch (const adgame::NotAnEquilibrium& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
