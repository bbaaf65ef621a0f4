#pragma once

#include <vector>

#include "adgame/game_spec.hpp"
#include "adgame/profile.hpp"
#include "adgame/rational.hpp"

namespace adgame {

// Largest k such that 1/r + 1/(r-1) + ... + 1/(r-k+1) < 1; the next term
// crosses 1. Exact arithmetic up to r = 10^4; above that, compensated
// summation decides only outside a guard band around 1 and falls back to
// high-precision arithmetic inside it, so the answer never hinges on an
// unguarded float comparison.
long harmonic_crossing(long r);

// harmonic_crossing for every r in [2, r_max], entry [r], computed with one
// exact sliding-window pass instead of r_max independent sums.
std::vector<long> upper_bound_table(long r_max);

struct UpperBound {
  long k_star = 0;  // crossing before endowment caps
  long l_star = 0;  // min(k_star, r_a, r_d)
};

UpperBound upper_bound(long r_a, long r_d);

Profile<Rational> equal_equilibrium(long r);
Profile<Rational> unequal_equilibrium(long r_a, long r_d);

// Same formulas in double, for endowments where exact residuals are overkill.
// l_star still comes from the guarded crossing.
Profile<double> unequal_equilibrium_double(long r_a, long r_d);

// Base-game profile for an already-known crossing, so batch callers holding
// an upper_bound_table do not recompute r_max crossings one by one.
Profile<double> base_profile_for_crossing(long r_a, long r_d, long k_star);

struct TieBreakResult {
  Profile<Rational> profile;
  // True once t reaches 1/(r - l*): the defender's mix shifts up one level
  // and level 0 leaves her support.
  bool shifted = false;
  // True when t equals that threshold exactly; both profiles are equilibria.
  bool at_threshold = false;
};

TieBreakResult tie_break_equilibrium(long r, const Rational& tie_win);

// Warm glow adds w_a to every attacker win and w_d to every successful
// defense. Closed form requires each positive glow to be at least 1 and
// refuses the degenerate corner where the defender would exhaust her
// endowment with no glow of her own (no unique equilibrium there); throws
// std::domain_error in both cases. Zero glow reduces to the base formulas.
Profile<Rational> warm_glow_equilibrium(long r_a, long r_d, const Rational& w_a,
                                        const Rational& w_d);

struct OutsideOptionResult {
  Profile<Rational> profile;
  UpperBound bound;
  bool verified = false;   // exact best-response check passed
  double max_slack = 0.0;  // largest violation when verified is false
};

// Production variant: a side with an outside option keeps an extra benefit
// whenever its retained endowment still covers the production cost. The game
// must have production on at least one side and no other variant active.
OutsideOptionResult outside_option_equilibrium(const GameSpec& spec);

}  // namespace adgame
