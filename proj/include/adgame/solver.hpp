#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "adgame/profile.hpp"
#include "adgame/tables.hpp"

namespace adgame {

template <typename T>
struct VerificationReport {
  T max_slack_a{};                // best deviation gain for the attacker (>= 0)
  T max_slack_d{};                // best deviation gain for the defender (>= 0)
  T support_payoff_spread_a{};    // max - min payoff across the attacker's support
  T support_payoff_spread_d{};
  T value_a{};
  T value_d{};
  bool is_equilibrium = false;
};

template <typename T> T default_epsilon();
template <> inline double default_epsilon<double>() { return 1e-9; }
template <> inline Rational default_epsilon<Rational>() { return Rational(0); }

// Best-response check straight off the dense tables: every pure strategy's
// expected payoff against the opponent's mix, slack against the achieved
// value, and payoff spread across the own support. is_equilibrium iff all
// four numbers are within epsilon.
template <typename T>
VerificationReport<T> verify_equilibrium(const GameTables<T>& tables, const Profile<T>& profile,
                                         const T& epsilon);

// Same check in O(r_a + r_d) using the separable structure and prefix sums
// (long double accumulation for T = double). Agrees with the dense check to
// well below the default epsilon; use it when tables would not fit.
template <typename T>
VerificationReport<T> verify_structural(const StructuralGame<T>& game, const Profile<T>& profile,
                                        const T& epsilon);

// The indifference recursion only applies to games with the win/lose shape it
// assumes; this names the first cell or index where that shape broke.
struct StructureError : std::runtime_error {
  StructureError(long index, const std::string& what)
      : std::runtime_error("structure violated at index " + std::to_string(index) + ": " + what),
        index(index) {}
  long index;
};

struct SolveError : std::runtime_error {
  SolveError(const std::string& what, double max_slack)
      : std::runtime_error(what), max_slack(max_slack) {}
  double max_slack = 0.0;
};

enum class SolvePath { Indifference, Enumeration };

struct IndifferenceResult {
  Profile<double> profile;
  SolvePath path = SolvePath::Indifference;
  VerificationReport<double> verification;
};

// Forward recursion: make the attacker indifferent level by level to pin the
// defender's mix, then invert the defender's indifference for the attacker's.
// Independent of the closed forms; works off table cells only. Throws
// StructureError when the game lacks the assumed shape. If the recursion's
// profile fails verification it falls back to enumerate_equilibria on small
// games and reports which path produced the answer; throws SolveError when
// both fail.
IndifferenceResult solve_indifference(const GameTables<double>& tables);

// Support enumeration oracle for small games ((r_a+1)(r_d+1) <= 400):
// candidate equal-size support pairs (all subset pairs when both endowments
// are <= 6, contiguous prefix pairs plus defender prefixes starting at 1
// otherwise), indifference linear system per pair with partial pivoting,
// residual and nonnegativity screens, then full verification at epsilon.
// Deduplicated within 1e-7 L-infinity and sorted lexicographically.
std::vector<Profile<double>> enumerate_equilibria(const GameTables<double>& tables,
                                                  double epsilon);

inline constexpr long kEnumerationCellGuard = 400;

}  // namespace adgame
