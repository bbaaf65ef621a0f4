#include "adgame/tables.hpp"

namespace adgame {

template <typename T>
StructuralGame<T> make_structural(const GameSpec& spec) {
  StructuralGame<T> g;
  g.r_a = spec.r_a;
  g.r_d = spec.r_d;
  g.tie_win = from_double<T>(spec.tie_win_prob);

  T p_uninvested = T(0);
  T p_appropriated = T(0);
  T p_defender = T(0);
  if (spec.risk) {
    T p = from_double<T>(spec.risk->p);
    switch (spec.risk->scenario) {
      case RiskScenario::UninvestedEndowment: p_uninvested = p; break;
      case RiskScenario::AppropriatedValue: p_appropriated = p; break;
      case RiskScenario::DefenderEndowment: p_defender = p; break;
      case RiskScenario::All:
        p_uninvested = p;
        p_appropriated = p;
        p_defender = p;
        break;
    }
  }

  T q_a = T(0);
  long c_a = 0;
  if (spec.production_a) {
    q_a = from_double<T>(spec.production_a->benefit) - T(spec.production_a->cost);
    c_a = spec.production_a->cost;
  }
  T q_d = T(0);
  long c_d = 0;
  if (spec.production_d) {
    q_d = from_double<T>(spec.production_d->benefit) - T(spec.production_d->cost);
    c_d = spec.production_d->cost;
  }

  T w_a = from_double<T>(spec.warm_glow_a);
  T w_d = from_double<T>(spec.warm_glow_d);

  g.keep_a.resize(spec.r_a + 1);
  for (long i = 0; i <= spec.r_a; ++i) {
    T bundle = T(spec.r_a - i);
    if (spec.production_a && spec.r_a - i >= c_a) bundle += q_a;
    g.keep_a[i] = (T(1) - p_uninvested) * bundle;
  }

  g.gain_a.resize(spec.r_d + 1);
  g.keep_d.resize(spec.r_d + 1);
  for (long j = 0; j <= spec.r_d; ++j) {
    T bundle = T(spec.r_d - j);
    if (spec.production_d && spec.r_d - j >= c_d) bundle += q_d;
    g.gain_a[j] = (T(1) - p_appropriated) * bundle + w_a;
    g.keep_d[j] = (T(1) - p_defender) * bundle + w_d;
  }
  return g;
}

template <typename T>
GameTables<T> build_payoff_tables(const GameSpec& spec) {
  StructuralGame<T> g = make_structural<T>(spec);
  GameTables<T> tables;
  tables.r_a = g.r_a;
  tables.r_d = g.r_d;
  tables.pi_a.assign(g.r_a + 1, std::vector<T>(g.r_d + 1, T(0)));
  tables.pi_d.assign(g.r_a + 1, std::vector<T>(g.r_d + 1, T(0)));
  for (long i = 0; i <= g.r_a; ++i) {
    for (long j = 0; j <= g.r_d; ++j) {
      tables.pi_a[i][j] = g.pi_a(i, j);
      tables.pi_d[i][j] = g.pi_d(i, j);
    }
  }
  return tables;
}

template StructuralGame<double> make_structural<double>(const GameSpec&);
template StructuralGame<Rational> make_structural<Rational>(const GameSpec&);
template GameTables<double> build_payoff_tables<double>(const GameSpec&);
template GameTables<Rational> build_payoff_tables<Rational>(const GameSpec&);

}  // namespace adgame
