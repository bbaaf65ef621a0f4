#pragma once

#include <stdexcept>
#include <string>

#include "adgame/game_spec.hpp"
#include "adgame/metrics.hpp"
#include "adgame/profile.hpp"
#include "adgame/solve.hpp"
#include "adgame/solver.hpp"

namespace adgame {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// 17 significant digits, enough to round-trip any double exactly.
std::string format_double(double x);

// Strict parsers: unknown fields and wrong types are errors, absent optional
// sections mean the variant is off.
GameSpec parse_game_spec_json(const std::string& text);
Profile<double> parse_profile_json(const std::string& text);

std::string spec_to_json(const GameSpec& spec);
std::string profile_to_json(const Profile<double>& profile);
std::string report_to_json(const EquilibriumReport<double>& report);
std::string verification_to_json(const VerificationReport<double>& verification, double epsilon);
std::string solve_outcome_to_json(const SolveOutcome& outcome, double epsilon);

}  // namespace adgame
