#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "adgame/game_spec.hpp"
#include "adgame/metrics.hpp"
#include "adgame/profile.hpp"
#include "adgame/solver.hpp"

namespace adgame {

enum class SolveMethod { ClosedForm, Indifference, Enumeration };

const char* solve_method_name(SolveMethod method);

struct SolveOutcome {
  GameSpec spec;
  Profile<double> profile;
  SolveMethod method = SolveMethod::ClosedForm;
  VerificationReport<double> verification;
  EquilibriumReport<double> report;
  std::vector<std::string> notes;  // fallbacks taken, refusals, equilibrium counts
};

struct SolveFailure : std::runtime_error {
  SolveFailure(const std::string& what, std::vector<std::string> notes)
      : std::runtime_error(what), notes(std::move(notes)) {}
  std::vector<std::string> notes;
};

// Orchestrates one game: closed form where one exists, otherwise the
// indifference solver, otherwise enumeration; every candidate passes the
// independent verifier at epsilon before being accepted. Throws
// ValidationError for a bad spec and SolveFailure when no route verifies.
SolveOutcome solve_game(const GameSpec& spec, double epsilon = 1e-9);

}  // namespace adgame
