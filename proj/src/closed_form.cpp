#include "adgame/closed_form.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "adgame/solver.hpp"
#include "adgame/tables.hpp"

namespace adgame {

namespace {

constexpr long kExactCrossingLimit = 10000;

// 512-bit fallback for sums that land inside the float guard band. The
// arithmetic error here (~1e-150) is astronomically below any gap between a
// partial sum and 1, so the comparison is safe.
long crossing_precise(long r) {
  mpf_class sum(0, 512);
  for (long k = 0;; ++k) {
    mpf_class term(1, 512);
    term /= static_cast<unsigned long>(r - k);
    mpf_class next(sum + term);
    if (next >= 1) return k;
    sum = next;
  }
}

long crossing_raw(long r) {
  if (r <= kExactCrossingLimit) {
    Rational sum(0);
    for (long k = 0;; ++k) {
      Rational term = rational(1, r - k);
      if (sum + term >= 1) return k;
      sum += term;
    }
  }
  // Kahan-compensated descent with a guard band: only clear-cut comparisons
  // are decided in floating point.
  const long double band = 1e-12L;
  long double sum = 0.0L;
  long double comp = 0.0L;
  for (long k = 0;; ++k) {
    long double term = 1.0L / static_cast<long double>(r - k);
    long double y = term - comp;
    long double next = sum + y;
    long double delta = next - 1.0L;
    if (delta > -band) {
      if (delta > band) return k;
      return crossing_precise(r);
    }
    comp = (next - sum) - y;
    sum = next;
  }
}

// Shared builder for the base and warm-glow families: the defender's mix
// makes the attacker indifferent (terms 1/(r_d + w_a - j)), the attacker's
// mix makes the defender indifferent (weights r_d + w_d - i).
template <typename T>
std::pair<Profile<T>, long> glow_profile(long r_a, long r_d, const T& w_a, const T& w_d) {
  long cap = std::min(r_a, r_d);
  Profile<T> p;
  p.d.assign(r_d + 1, T(0));
  p.a.assign(r_a + 1, T(0));

  T sum = T(0);
  long l = cap;
  for (long j = 0; j < cap; ++j) {
    T term = T(1) / (T(r_d) + w_a - T(j));
    if (sum + term >= T(1)) {
      l = j;
      break;
    }
    p.d[j] = term;
    sum += term;
  }
  p.d[l] = T(1) - sum;

  T glow_pool = T(r_d) + w_d;
  T top = glow_pool - T(l);
  p.a[0] = top / glow_pool;
  // A crossing that eats the whole pool leaves top == 0 and a zero factor at
  // i == l; skip the loop and let the caller refuse the degenerate spec.
  if (top > T(0)) {
    for (long i = 1; i <= l; ++i) {
      p.a[i] = top / ((glow_pool - T(i - 1)) * (glow_pool - T(i)));
    }
  }
  return {std::move(p), l};
}

}  // namespace

long harmonic_crossing(long r) {
  if (r < 2) throw std::domain_error("harmonic_crossing requires r >= 2");
  return crossing_raw(r);
}

std::vector<long> upper_bound_table(long r_max) {
  if (r_max < 2) throw std::domain_error("upper_bound_table requires r_max >= 2");
  std::vector<long> table(r_max + 1, 0);
  // Sliding window {m+1..r} with exact sum < 1; the crossing for r is r - m.
  Rational sum = rational(1, 2);
  long m = 1;
  table[2] = 1;
  for (long r = 3; r <= r_max; ++r) {
    sum += rational(1, r);
    while (sum >= 1) {
      ++m;
      sum -= rational(1, m);
    }
    table[r] = r - m;
  }
  return table;
}

UpperBound upper_bound(long r_a, long r_d) {
  if (r_a < 2 || r_d < 2) throw std::domain_error("endowments must be >= 2");
  UpperBound b;
  b.k_star = harmonic_crossing(r_d);
  b.l_star = std::min(b.k_star, std::min(r_a, r_d));
  return b;
}

Profile<Rational> equal_equilibrium(long r) { return unequal_equilibrium(r, r); }

Profile<Rational> unequal_equilibrium(long r_a, long r_d) {
  if (r_a < 2 || r_d < 2) throw std::domain_error("endowments must be >= 2");
  return glow_profile<Rational>(r_a, r_d, Rational(0), Rational(0)).first;
}

Profile<double> unequal_equilibrium_double(long r_a, long r_d) {
  return base_profile_for_crossing(r_a, r_d, harmonic_crossing(r_d));
}

Profile<double> base_profile_for_crossing(long r_a, long r_d, long k_star) {
  if (r_a < 2 || r_d < 2) throw std::domain_error("endowments must be >= 2");
  long l = std::min(k_star, std::min(r_a, r_d));
  Profile<double> p;
  p.d.assign(r_d + 1, 0.0);
  p.a.assign(r_a + 1, 0.0);
  long double sum = 0.0L;
  for (long j = 0; j < l; ++j) {
    double term = 1.0 / static_cast<double>(r_d - j);
    p.d[j] = term;
    sum += term;
  }
  p.d[l] = std::max(0.0, static_cast<double>(1.0L - sum));
  double top = static_cast<double>(r_d - l);
  p.a[0] = top / static_cast<double>(r_d);
  for (long i = 1; i <= l; ++i) {
    p.a[i] = top / (static_cast<double>(r_d - i + 1) * static_cast<double>(r_d - i));
  }
  return p;
}

TieBreakResult tie_break_equilibrium(long r, const Rational& tie_win) {
  if (r < 2) throw std::domain_error("r must be >= 2");
  if (sgn(tie_win) < 0 || tie_win > 1) throw std::domain_error("tie_win must be in [0, 1]");
  TieBreakResult out;
  long l = crossing_raw(r);
  Rational threshold = rational(1, r - l);
  if (tie_win < threshold) {
    // Ties this mild leave the zero-tie equilibrium intact.
    out.profile = equal_equilibrium(r);
    return out;
  }
  out.shifted = true;
  out.at_threshold = (tie_win == threshold);
  // Defender vacates level 0; her support climbs to {1..L}, the attacker's
  // stays at {0..L-1}.
  long top_level = crossing_raw(r - 1) + 1;
  Profile<Rational>& p = out.profile;
  p.d.assign(r + 1, Rational(0));
  Rational sum(0);
  for (long j = 1; j < top_level; ++j) {
    p.d[j] = rational(1, r - j);
    sum += p.d[j];
  }
  p.d[top_level] = Rational(1) - sum;
  p.a.assign(r + 1, Rational(0));
  Rational top = Rational(r - top_level);
  p.a[0] = top / Rational(r - 1);
  for (long i = 1; i < top_level; ++i) {
    p.a[i] = top / Rational((r - i) * (r - i - 1));
  }
  return out;
}

Profile<Rational> warm_glow_equilibrium(long r_a, long r_d, const Rational& w_a,
                                        const Rational& w_d) {
  if (r_a < 2 || r_d < 2) throw std::domain_error("endowments must be >= 2");
  if (sgn(w_a) < 0 || sgn(w_d) < 0) throw std::domain_error("warm glow must be >= 0");
  if ((sgn(w_a) > 0 && w_a < 1) || (sgn(w_d) > 0 && w_d < 1)) {
    throw std::domain_error("positive warm glow below 1 is outside the closed form; use the solver");
  }
  auto [profile, l] = glow_profile<Rational>(r_a, r_d, w_a, w_d);
  if (l == r_d) {
    // The glow pushed spending to the defender's entire endowment.
    if (sgn(w_d) == 0) {
      throw std::domain_error(
          "defender endowment exhausted with no defender glow: equilibrium is not unique");
    }
    if (r_a > r_d && profile.d[l] * w_a > 1) {
      throw std::domain_error(
          "defender endowment exhausted with spare attacker budget: no closed form; use the solver");
    }
  }
  return profile;
}

OutsideOptionResult outside_option_equilibrium(const GameSpec& spec) {
  require_valid(spec);
  if (!spec.has_production()) {
    throw std::invalid_argument("production must be configured on at least one side");
  }
  if (spec.has_tie() || spec.has_risk() || spec.has_warm_glow()) {
    throw std::invalid_argument("outside options do not combine with other variants in closed form");
  }
  StructuralGame<Rational> g = make_structural<Rational>(spec);
  long cap = std::min(g.r_a, g.r_d);

  // Defender mix: term_j = (keep_a[j] - keep_a[j+1]) / gain_a[j] equalizes the
  // attacker's marginal step; both pieces are strictly positive.
  OutsideOptionResult out;
  Profile<Rational>& p = out.profile;
  p.d.assign(g.r_d + 1, Rational(0));
  p.a.assign(g.r_a + 1, Rational(0));

  Rational sum(0);
  long l = cap;
  bool crossed = false;
  for (long j = 0; j < cap; ++j) {
    Rational term = (g.keep_a[j] - g.keep_a[j + 1]) / g.gain_a[j];
    if (sum + term >= 1) {
      l = j;
      crossed = true;
      break;
    }
    p.d[j] = term;
    sum += term;
  }
  p.d[l] = Rational(1) - sum;

  if (crossed) {
    out.bound.k_star = l;
  } else {
    // Crossing past the cap, continued as if the attacker's budget ran on
    // bare (marginal cost 1 per level).
    Rational virtual_sum = sum;
    long k = cap;
    while (virtual_sum < 1 && k < g.r_d) {
      Rational numer = (k + 1 <= g.r_a) ? (g.keep_a[k] - g.keep_a[k + 1]) : Rational(1);
      virtual_sum += numer / g.gain_a[k];
      if (virtual_sum >= 1) break;
      ++k;
    }
    out.bound.k_star = k;
  }
  out.bound.l_star = l;

  // Attacker mix from the defender's indifference: cumulative mass at j is
  // keep_d[l] / keep_d[j].
  Rational value_weight = g.keep_d[l];
  Rational cum_prev(0);
  for (long j = 0; j <= l; ++j) {
    Rational cum = (j == l) ? Rational(1) : value_weight / g.keep_d[j];
    p.a[j] = cum - cum_prev;
    cum_prev = cum;
  }

  VerificationReport<Rational> check = verify_structural<Rational>(g, p, Rational(0));
  out.verified = check.is_equilibrium;
  if (!out.verified) {
    Rational worst = std::max(std::max(check.max_slack_a, check.max_slack_d),
                              std::max(check.support_payoff_spread_a, check.support_payoff_spread_d));
    out.max_slack = to_double(worst);
  }
  return out;
}

}  // namespace adgame
