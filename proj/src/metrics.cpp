#include "adgame/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eval.hpp"

namespace adgame {

namespace {

// The win/loss split depends only on the profile and the tie probability, so
// the statistics are shared between the dense and structural entry points;
// payoff values arrive from the caller's evaluation.
template <typename T>
EquilibriumReport<T> stats_from(const GameSpec& spec, const Profile<T>& p, const T& value_a,
                                const T& value_d) {
  using A = detail::Acc<T>;
  const long r_a = static_cast<long>(p.a.size()) - 1;
  const long r_d = static_cast<long>(p.d.size()) - 1;
  const A tie = static_cast<A>(from_double<T>(spec.tie_win_prob));

  std::vector<A> mass_before(r_d + 2, A(0));
  std::vector<A> spend_before(r_d + 2, A(0));
  for (long j = 0; j <= r_d; ++j) {
    A dj = static_cast<A>(p.d[j]);
    mass_before[j + 1] = mass_before[j] + dj;
    spend_before[j + 1] = spend_before[j] + dj * A(j);
  }

  A p_win = 0, spend_d_win = 0, e_a = 0, e_d = 0;
  for (long i = 0; i <= r_a; ++i) {
    A ai = static_cast<A>(p.a[i]);
    long c = std::min(i, r_d + 1);
    p_win += ai * mass_before[c];
    spend_d_win += ai * spend_before[c];
    if (i <= r_d) {
      A shared = tie * ai * static_cast<A>(p.d[i]);
      p_win += shared;
      spend_d_win += shared * A(i);
    }
    e_a += ai * A(i);
  }
  for (long j = 0; j <= r_d; ++j) e_d += static_cast<A>(p.d[j]) * A(j);

  EquilibriumReport<T> rep;
  rep.l_star = max_support_index(p.d);
  rep.e_a = static_cast<T>(e_a);
  rep.e_d = static_cast<T>(e_d);
  rep.p_win = static_cast<T>(p_win);
  rep.pi_a = value_a;
  rep.pi_d = value_d;
  rep.attack_prob = T(1) - p.a[0];
  T total = value_a + value_d;
  rep.attacker_share = in_support(total) ? static_cast<T>(value_a / total) : T(0);
  rep.social_waste = static_cast<T>((e_a + e_d) / A(r_a + r_d));
  if (in_support(rep.attack_prob)) {
    rep.attack_force = static_cast<T>(e_a / static_cast<A>(rep.attack_prob));
  }
  if (in_support(rep.p_win)) {
    rep.e_d_given_win = static_cast<T>(spend_d_win / p_win);
  }
  T p_loss = T(1) - rep.p_win;
  if (in_support(p_loss)) {
    rep.e_d_given_loss = static_cast<T>((e_d - spend_d_win) / static_cast<A>(p_loss));
  }
  return rep;
}

template <typename T>
void require_equilibrium(const VerificationReport<T>& check) {
  if (check.is_equilibrium) return;
  T worst = std::max(std::max(check.max_slack_a, check.max_slack_d),
                     std::max(check.support_payoff_spread_a, check.support_payoff_spread_d));
  throw NotAnEquilibrium("profile is not an equilibrium; refusing to summarize", to_double(worst));
}

}  // namespace

template <typename T>
EquilibriumReport<T> summarize(const GameSpec& spec, const GameTables<T>& tables,
                               const Profile<T>& profile, const T& epsilon) {
  auto ev = detail::evaluate_dense(tables, profile);
  require_equilibrium(detail::report_from_eval(ev, profile, epsilon));
  return stats_from(spec, profile, ev.value_a, ev.value_d);
}

template <typename T>
EquilibriumReport<T> summarize_structural(const GameSpec& spec, const StructuralGame<T>& game,
                                          const Profile<T>& profile, const T& epsilon) {
  auto ev = detail::evaluate_structural(game, profile);
  require_equilibrium(detail::report_from_eval(ev, profile, epsilon));
  return stats_from(spec, profile, ev.value_a, ev.value_d);
}

template EquilibriumReport<double> summarize<double>(const GameSpec&, const GameTables<double>&,
                                                     const Profile<double>&, const double&);
template EquilibriumReport<Rational> summarize<Rational>(const GameSpec&,
                                                         const GameTables<Rational>&,
                                                         const Profile<Rational>&, const Rational&);
template EquilibriumReport<double> summarize_structural<double>(const GameSpec&,
                                                                const StructuralGame<double>&,
                                                                const Profile<double>&,
                                                                const double&);
template EquilibriumReport<Rational> summarize_structural<Rational>(const GameSpec&,
                                                                    const StructuralGame<Rational>&,
                                                                    const Profile<Rational>&,
                                                                    const Rational&);

std::map<std::string, double> asymptotic_gaps(const GameSpec& spec,
                                              const EquilibriumReport<double>& report) {
  if (!spec.is_base() || spec.r_a != spec.r_d) {
    throw std::domain_error("asymptotic gaps are defined for the base game with equal endowments");
  }
  const double e = std::numbers::e;
  const double r = static_cast<double>(spec.r_a);
  std::map<std::string, double> gaps;
  gaps["l_star_over_r"] = std::fabs(static_cast<double>(report.l_star) / r - (1.0 - 1.0 / e));
  gaps["p_win"] = std::fabs(report.p_win - 1.0 / e);
  gaps["e_a_over_r"] = std::fabs(report.e_a / r - (1.0 - 2.0 / e));
  gaps["e_d_over_r"] = std::fabs(report.e_d / r - 1.0 / e);
  gaps["attacker_share"] = std::fabs(report.attacker_share - e / (e + 1.0));
  if (report.e_d_given_win) {
    gaps["e_d_given_win_over_r"] = std::fabs(*report.e_d_given_win / r - (3.0 - e));
  }
  if (report.e_d_given_loss) {
    gaps["e_d_given_loss_over_r"] = std::fabs(*report.e_d_given_loss / r - (1.0 - 1.0 / (e - 1.0)));
  }
  return gaps;
}

}  // namespace adgame
