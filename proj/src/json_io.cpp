#include "adgame/json_io.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace adgame {

using nlohmann::json;

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // strip the sign off negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

long require_integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ParseError("field '" + field + "' must be an integer");
  return v.get<long>();
}

double require_number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ParseError("field '" + field + "' must be a number");
  return v.get<double>();
}

RiskSpec parse_risk(const json& v) {
  if (!v.is_object()) throw ParseError("field 'risk' must be an object");
  RiskSpec risk;
  bool saw_scenario = false, saw_p = false;
  for (const auto& [key, value] : v.items()) {
    if (key == "scenario") {
      if (!value.is_string()) throw ParseError("field 'risk.scenario' must be a string");
      auto s = risk_scenario_from_name(value.get<std::string>());
      if (!s) throw ParseError("unknown risk scenario '" + value.get<std::string>() + "'");
      risk.scenario = *s;
      saw_scenario = true;
    } else if (key == "p") {
      risk.p = require_number(value, "risk.p");
      saw_p = true;
    } else {
      throw ParseError("unknown field 'risk." + key + "'");
    }
  }
  if (!saw_scenario || !saw_p) throw ParseError("field 'risk' needs both 'scenario' and 'p'");
  return risk;
}

ProductionSpec parse_production(const json& v, const std::string& field) {
  if (!v.is_object()) throw ParseError("field '" + field + "' must be an object");
  ProductionSpec prod;
  bool saw_cost = false, saw_benefit = false;
  for (const auto& [key, value] : v.items()) {
    if (key == "cost") {
      prod.cost = require_integer(value, field + ".cost");
      saw_cost = true;
    } else if (key == "benefit") {
      prod.benefit = require_number(value, field + ".benefit");
      saw_benefit = true;
    } else {
      throw ParseError("unknown field '" + field + "." + key + "'");
    }
  }
  if (!saw_cost || !saw_benefit) {
    throw ParseError("field '" + field + "' needs both 'cost' and 'benefit'");
  }
  return prod;
}

std::vector<double> require_number_array(const json& v, const std::string& field) {
  if (!v.is_array()) throw ParseError("field '" + field + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) throw ParseError("field '" + field + "' must contain only numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

GameSpec parse_game_spec_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("spec must be a JSON object");
  GameSpec spec;
  for (const auto& [key, value] : j.items()) {
    if (key == "r_a") {
      spec.r_a = require_integer(value, key);
    } else if (key == "r_d") {
      spec.r_d = require_integer(value, key);
    } else if (key == "tie_win_prob") {
      spec.tie_win_prob = require_number(value, key);
    } else if (key == "risk") {
      // null on an optional field means absent
      if (!value.is_null()) spec.risk = parse_risk(value);
    } else if (key == "warm_glow_a") {
      spec.warm_glow_a = require_number(value, key);
    } else if (key == "warm_glow_d") {
      spec.warm_glow_d = require_number(value, key);
    } else if (key == "production_a") {
      if (!value.is_null()) spec.production_a = parse_production(value, key);
    } else if (key == "production_d") {
      if (!value.is_null()) spec.production_d = parse_production(value, key);
    } else {
      throw ParseError("unknown field '" + key + "'");
    }
  }
  return spec;
}

Profile<double> parse_profile_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("profile must be a JSON object");
  Profile<double> p;
  bool saw_a = false, saw_d = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "a") {
      p.a = require_number_array(value, key);
      saw_a = true;
    } else if (key == "d") {
      p.d = require_number_array(value, key);
      saw_d = true;
    } else {
      throw ParseError("unknown field '" + key + "'");
    }
  }
  if (!saw_a || !saw_d) throw ParseError("profile needs both 'a' and 'd'");
  return p;
}

std::string spec_to_json(const GameSpec& s) {
  std::ostringstream o;
  o << "{\"r_a\":" << s.r_a << ",\"r_d\":" << s.r_d;
  o << ",\"tie_win_prob\":" << format_double(s.tie_win_prob);
  if (s.risk) {
    o << ",\"risk\":{\"scenario\":\"" << risk_scenario_name(s.risk->scenario)
      << "\",\"p\":" << format_double(s.risk->p) << "}";
  }
  o << ",\"warm_glow_a\":" << format_double(s.warm_glow_a);
  o << ",\"warm_glow_d\":" << format_double(s.warm_glow_d);
  if (s.production_a) {
    o << ",\"production_a\":{\"cost\":" << s.production_a->cost
      << ",\"benefit\":" << format_double(s.production_a->benefit) << "}";
  }
  if (s.production_d) {
    o << ",\"production_d\":{\"cost\":" << s.production_d->cost
      << ",\"benefit\":" << format_double(s.production_d->benefit) << "}";
  }
  o << "}";
  return o.str();
}

namespace {

void write_array(std::ostringstream& o, const std::vector<double>& v) {
  o << "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) o << ",";
    o << format_double(v[i]);
  }
  o << "]";
}

}  // namespace

std::string profile_to_json(const Profile<double>& p) {
  std::ostringstream o;
  o << "{\"a\":";
  write_array(o, p.a);
  o << ",\"d\":";
  write_array(o, p.d);
  o << "}";
  return o.str();
}

std::string report_to_json(const EquilibriumReport<double>& r) {
  std::ostringstream o;
  o << "{\"l_star\":" << r.l_star;
  o << ",\"e_a\":" << format_double(r.e_a);
  o << ",\"e_d\":" << format_double(r.e_d);
  o << ",\"p_win\":" << format_double(r.p_win);
  o << ",\"pi_a\":" << format_double(r.pi_a);
  o << ",\"pi_d\":" << format_double(r.pi_d);
  o << ",\"attacker_share\":" << format_double(r.attacker_share);
  o << ",\"social_waste\":" << format_double(r.social_waste);
  o << ",\"attack_prob\":" << format_double(r.attack_prob);
  if (r.e_d_given_win) o << ",\"e_d_given_win\":" << format_double(*r.e_d_given_win);
  if (r.e_d_given_loss) o << ",\"e_d_given_loss\":" << format_double(*r.e_d_given_loss);
  if (r.attack_force) o << ",\"attack_force\":" << format_double(*r.attack_force);
  o << "}";
  return o.str();
}

std::string verification_to_json(const VerificationReport<double>& v, double epsilon) {
  std::ostringstream o;
  o << "{\"max_slack_a\":" << format_double(v.max_slack_a);
  o << ",\"max_slack_d\":" << format_double(v.max_slack_d);
  o << ",\"support_payoff_spread_a\":" << format_double(v.support_payoff_spread_a);
  o << ",\"support_payoff_spread_d\":" << format_double(v.support_payoff_spread_d);
  o << ",\"value_a\":" << format_double(v.value_a);
  o << ",\"value_d\":" << format_double(v.value_d);
  o << ",\"is_equilibrium\":" << (v.is_equilibrium ? "true" : "false");
  o << ",\"epsilon\":" << format_double(epsilon);
  o << "}";
  return o.str();
}

std::string solve_outcome_to_json(const SolveOutcome& outcome, double epsilon) {
  std::ostringstream o;
  o << "{\"spec\":" << spec_to_json(outcome.spec);
  o << ",\"method\":\"" << solve_method_name(outcome.method) << "\"";
  o << ",\"profile\":" << profile_to_json(outcome.profile);
  o << ",\"report\":" << report_to_json(outcome.report);
  o << ",\"verification\":" << verification_to_json(outcome.verification, epsilon);
  o << ",\"notes\":[";
  for (std::size_t i = 0; i < outcome.notes.size(); ++i) {
    if (i) o << ",";
    o << "\"" << json_escape(outcome.notes[i]) << "\"";
  }
  o << "]}";
  return o.str();
}

}  // namespace adgame
