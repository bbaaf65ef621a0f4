#pragma once

#include <algorithm>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "adgame/profile.hpp"
#include "adgame/solver.hpp"
#include "adgame/tables.hpp"

namespace adgame::detail {

// Accumulate doubles in long double so O(r) prefix sums stay far below the
// 1e-9 verification gate even at r = 10^4; rationals stay exact.
template <typename T>
using Acc = std::conditional_t<std::is_same_v<T, double>, long double, T>;

template <typename T>
struct Eval {
  std::vector<T> u_a;  // expected payoff of each pure attack vs the defender's mix
  std::vector<T> u_d;
  T value_a{};
  T value_d{};
};

template <typename T>
void check_profile_shape(long r_a, long r_d, const Profile<T>& p) {
  if (static_cast<long>(p.a.size()) != r_a + 1 || static_cast<long>(p.d.size()) != r_d + 1) {
    throw std::invalid_argument("profile dimensions do not match the game");
  }
  auto check_dist = [](const std::vector<T>& v, const char* side) {
    Acc<T> sum = 0;
    for (const T& x : v) {
      if (x < T(0) && !(x > T(-1e-9))) {
        throw std::invalid_argument(std::string(side) + " profile has a negative entry");
      }
      sum += static_cast<Acc<T>>(x);
    }
    Acc<T> gap = sum - Acc<T>(1);
    if (gap < 0) gap = -gap;
    if (!(gap <= Acc<T>(1e-9))) {
      throw std::invalid_argument(std::string(side) + " profile does not sum to 1");
    }
  };
  check_dist(p.a, "attacker");
  check_dist(p.d, "defender");
}

template <typename T>
Eval<T> evaluate_dense(const GameTables<T>& t, const Profile<T>& p) {
  check_profile_shape(t.r_a, t.r_d, p);
  Eval<T> ev;
  ev.u_a.resize(t.r_a + 1);
  ev.u_d.resize(t.r_d + 1);
  for (long i = 0; i <= t.r_a; ++i) {
    Acc<T> s = 0;
    for (long j = 0; j <= t.r_d; ++j) s += static_cast<Acc<T>>(p.d[j]) * static_cast<Acc<T>>(t.pi_a[i][j]);
    ev.u_a[i] = static_cast<T>(s);
  }
  for (long j = 0; j <= t.r_d; ++j) {
    Acc<T> s = 0;
    for (long i = 0; i <= t.r_a; ++i) s += static_cast<Acc<T>>(p.a[i]) * static_cast<Acc<T>>(t.pi_d[i][j]);
    ev.u_d[j] = static_cast<T>(s);
  }
  Acc<T> va = 0, vd = 0;
  for (long i = 0; i <= t.r_a; ++i) va += static_cast<Acc<T>>(p.a[i]) * static_cast<Acc<T>>(ev.u_a[i]);
  for (long j = 0; j <= t.r_d; ++j) vd += static_cast<Acc<T>>(p.d[j]) * static_cast<Acc<T>>(ev.u_d[j]);
  ev.value_a = static_cast<T>(va);
  ev.value_d = static_cast<T>(vd);
  return ev;
}

template <typename T>
Eval<T> evaluate_structural(const StructuralGame<T>& g, const Profile<T>& p) {
  check_profile_shape(g.r_a, g.r_d, p);
  Eval<T> ev;
  ev.u_a.resize(g.r_a + 1);
  ev.u_d.resize(g.r_d + 1);

  // prefix over the defender's mix: mass and gain collected by outbidding j < i
  std::vector<Acc<T>> gain_before(g.r_d + 2, Acc<T>(0));
  for (long j = 0; j <= g.r_d; ++j) {
    gain_before[j + 1] = gain_before[j] + static_cast<Acc<T>>(p.d[j]) * static_cast<Acc<T>>(g.gain_a[j]);
  }
  Acc<T> tie = static_cast<Acc<T>>(g.tie_win);
  for (long i = 0; i <= g.r_a; ++i) {
    long c = std::min(i, g.r_d + 1);
    Acc<T> s = static_cast<Acc<T>>(g.keep_a[i]) + gain_before[c];
    if (i <= g.r_d) s += tie * static_cast<Acc<T>>(p.d[i]) * static_cast<Acc<T>>(g.gain_a[i]);
    ev.u_a[i] = static_cast<T>(s);
  }

  // prefix over the attacker's mix: mass strictly below j
  std::vector<Acc<T>> mass_before(g.r_a + 2, Acc<T>(0));
  for (long i = 0; i <= g.r_a; ++i) {
    mass_before[i + 1] = mass_before[i] + static_cast<Acc<T>>(p.a[i]);
  }
  for (long j = 0; j <= g.r_d; ++j) {
    Acc<T> held = mass_before[std::min(j, g.r_a + 1)];
    if (j <= g.r_a) held += (Acc<T>(1) - tie) * static_cast<Acc<T>>(p.a[j]);
    ev.u_d[j] = static_cast<T>(static_cast<Acc<T>>(g.keep_d[j]) * held);
  }

  Acc<T> va = 0, vd = 0;
  for (long i = 0; i <= g.r_a; ++i) va += static_cast<Acc<T>>(p.a[i]) * static_cast<Acc<T>>(ev.u_a[i]);
  for (long j = 0; j <= g.r_d; ++j) vd += static_cast<Acc<T>>(p.d[j]) * static_cast<Acc<T>>(ev.u_d[j]);
  ev.value_a = static_cast<T>(va);
  ev.value_d = static_cast<T>(vd);
  return ev;
}

template <typename T>
VerificationReport<T> report_from_eval(const Eval<T>& ev, const Profile<T>& p, const T& epsilon) {
  VerificationReport<T> rep;
  rep.value_a = ev.value_a;
  rep.value_d = ev.value_d;

  auto side = [](const std::vector<T>& u, const std::vector<T>& mix, const T& value, T& slack,
                 T& spread) {
    T best = u[0];
    for (const T& x : u) best = std::max(best, x);
    slack = best - value;
    if (slack < T(0)) slack = T(0);
    bool seen = false;
    T lo{}, hi{};
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (!in_support(mix[k])) continue;
      if (!seen) {
        lo = hi = u[k];
        seen = true;
      } else {
        lo = std::min(lo, u[k]);
        hi = std::max(hi, u[k]);
      }
    }
    spread = seen ? hi - lo : T(0);
  };
  side(ev.u_a, p.a, ev.value_a, rep.max_slack_a, rep.support_payoff_spread_a);
  side(ev.u_d, p.d, ev.value_d, rep.max_slack_d, rep.support_payoff_spread_d);

  T worst = std::max(std::max(rep.max_slack_a, rep.max_slack_d),
                     std::max(rep.support_payoff_spread_a, rep.support_payoff_spread_d));
  rep.is_equilibrium = worst <= epsilon;
  return rep;
}

}  // namespace adgame::detail
