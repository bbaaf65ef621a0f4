#include "adgame/solve.hpp"

#include <algorithm>

#include "adgame/closed_form.hpp"
#include "adgame/tables.hpp"

namespace adgame {

namespace {

// Above this many cells the dense table (and with it the indifference solver)
// is skipped; closed forms are checked structurally in O(r_a + r_d) instead.
constexpr long kDenseCellGuard = 4'000'000;

// Below this the exact closed form is converted to double; above, the double
// twin avoids building huge rationals.
constexpr long kExactProfileGuard = 2000;

}  // namespace

const char* solve_method_name(SolveMethod method) {
  switch (method) {
    case SolveMethod::ClosedForm: return "closed_form";
    case SolveMethod::Indifference: return "indifference";
    case SolveMethod::Enumeration: return "enumeration";
  }
  return "?";
}

SolveOutcome solve_game(const GameSpec& spec, double epsilon) {
  require_valid(spec);
  SolveOutcome out;
  out.spec = spec;
  const long r_a = spec.r_a;
  const long r_d = spec.r_d;
  StructuralGame<double> structure = make_structural<double>(spec);

  auto accept = [&](Profile<double> profile, SolveMethod method) -> bool {
    auto check = verify_structural<double>(structure, profile, epsilon);
    if (!check.is_equilibrium) return false;
    out.profile = std::move(profile);
    out.method = method;
    out.verification = check;
    out.report = summarize_structural<double>(spec, structure, out.profile, epsilon);
    return true;
  };

  const bool tie = spec.has_tie();
  const bool risk = spec.has_risk();
  const bool glow = spec.has_warm_glow();
  const bool prod = spec.has_production();
  const int variants = int(tie) + int(risk) + int(glow) + int(prod);

  std::optional<Profile<double>> candidate;
  if (variants == 0) {
    if (r_d <= kExactProfileGuard) {
      candidate = to_double_profile(unequal_equilibrium(r_a, r_d));
    } else {
      candidate = unequal_equilibrium_double(r_a, r_d);
    }
  } else if (variants == 1 && tie && r_a == r_d) {
    TieBreakResult res = tie_break_equilibrium(r_a, Rational(spec.tie_win_prob));
    if (res.shifted) out.notes.push_back("tie threshold reached: defender support shifted up one level");
    if (res.at_threshold) {
      out.notes.push_back("tie probability sits exactly at the threshold; equilibrium is not unique");
    }
    candidate = to_double_profile(res.profile);
  } else if (variants == 1 && glow) {
    try {
      candidate = to_double_profile(warm_glow_equilibrium(
          r_a, r_d, Rational(spec.warm_glow_a), Rational(spec.warm_glow_d)));
    } catch (const std::domain_error& e) {
      out.notes.push_back(std::string("warm-glow closed form refused: ") + e.what());
    }
  } else if (variants == 1 && prod) {
    OutsideOptionResult res = outside_option_equilibrium(spec);
    if (res.verified) {
      candidate = to_double_profile(res.profile);
    } else {
      out.notes.push_back("outside-option closed form failed its exact check");
    }
  }
  // Risk games and variant combinations have no closed form here; the solver
  // handles any game that keeps the win/lose shape.

  if (candidate) {
    if (accept(std::move(*candidate), SolveMethod::ClosedForm)) return out;
    out.notes.push_back("closed-form profile failed verification; falling back to the solver");
  }

  const long cells = (r_a + 1) * (r_d + 1);
  if (cells <= kDenseCellGuard) {
    GameTables<double> tables = build_payoff_tables<double>(spec);
    bool enumerated_inside = false;
    try {
      IndifferenceResult res = solve_indifference(tables);
      enumerated_inside = res.path == SolvePath::Enumeration;
      if (enumerated_inside) out.notes.push_back("indifference profile failed; enumeration answered");
      SolveMethod method =
          enumerated_inside ? SolveMethod::Enumeration : SolveMethod::Indifference;
      if (accept(std::move(res.profile), method)) return out;
      out.notes.push_back("solver profile failed structural verification");
    } catch (const StructureError& e) {
      out.notes.push_back(std::string("indifference recursion refused: ") + e.what());
    } catch (const SolveError& e) {
      out.notes.push_back(std::string("solver failed: ") + e.what());
      enumerated_inside = true;  // enumeration already ran (or was ruled out) inside
    }
    if (!enumerated_inside && cells <= kEnumerationCellGuard) {
      auto all = enumerate_equilibria(tables, epsilon);
      out.notes.push_back("enumeration found " + std::to_string(all.size()) +
                          (all.size() == 1 ? " equilibrium" : " equilibria"));
      if (!all.empty() && accept(all.front(), SolveMethod::Enumeration)) return out;
    }
  } else {
    out.notes.push_back("game too large for the dense solver");
  }
  throw SolveFailure("no route produced a verified equilibrium", out.notes);
}

}  // namespace adgame
