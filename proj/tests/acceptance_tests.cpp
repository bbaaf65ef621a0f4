#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "adgame/closed_form.hpp"
#include "adgame/metrics.hpp"
#include "adgame/solve.hpp"
#include "adgame/solver.hpp"
#include "adgame/tables.hpp"
#include "doctest.h"

using namespace adgame;

namespace {

// Each acceptance check prints one machine-readable verdict line; the ctest
// registration keys on that line, so the verdict and the doctest assertions
// are kept in lockstep by funnelling every condition through expect().
struct Criterion {
  std::string id;
  std::string label;
  bool ok = true;

  Criterion(std::string id, std::string label) : id(std::move(id)), label(std::move(label)) {}

  void expect(bool cond, const std::string& what) {
    if (!cond) ok = false;
    CHECK_MESSAGE(cond, what);
  }

  void note(const std::string& line) { std::printf("    note: %s\n", line.c_str()); }

  ~Criterion() {
    std::printf("[ACCEPTANCE] %s %s: %s\n", id.c_str(), label.c_str(), ok ? "PASS" : "FAIL");
    std::fflush(stdout);
  }
};

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

GameSpec base_spec(long r_a, long r_d) {
  GameSpec spec;
  spec.r_a = r_a;
  spec.r_d = r_d;
  return spec;
}

double linf(const Profile<double>& x, const Profile<double>& y) {
  double m = 0;
  for (std::size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
  for (std::size_t j = 0; j < x.d.size(); ++j) m = std::max(m, std::abs(x.d[j] - y.d[j]));
  return m;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

TEST_CASE("01 closed-form profiles verify on dense tables") {
  Criterion c("01", "closed-form profiles verify on dense tables");
  Timer timer;
  for (long r = 2; r <= 200; ++r) {
    auto tables = build_payoff_tables<double>(base_spec(r, r));
    auto profile = to_double_profile(equal_equilibrium(r));
    auto report = verify_equilibrium<double>(tables, profile, 1e-9);
    c.expect(report.is_equilibrium, "closed form fails verification at r = " + std::to_string(r));
  }
  double t = timer.seconds();
  c.expect(t < 5.0, "runtime " + fmt(t) + " s exceeds the 5 s budget");
}

TEST_CASE("02 small games have exactly one equilibrium") {
  Criterion c("02", "small games have exactly one equilibrium");
  Timer timer;
  for (long r_a = 2; r_a <= 6; ++r_a) {
    for (long r_d = 2; r_d <= 6; ++r_d) {
      auto tag = " at (" + std::to_string(r_a) + ", " + std::to_string(r_d) + ")";
      auto tables = build_payoff_tables<double>(base_spec(r_a, r_d));
      auto found = enumerate_equilibria(tables, 1e-9);
      c.expect(found.size() == 1,
               "expected exactly one equilibrium, found " + std::to_string(found.size()) + tag);
      if (found.size() == 1) {
        auto want = to_double_profile(unequal_equilibrium(r_a, r_d));
        c.expect(linf(found[0], want) <= 1e-9, "enumerated equilibrium is not the closed form" + tag);
      }
    }
  }
  double t = timer.seconds();
  c.expect(t < 60.0, "runtime " + fmt(t) + " s exceeds the 60 s budget");
}

TEST_CASE("03 exact conservation identities") {
  Criterion c("03", "exact conservation identities");
  bool spends_hold = true;
  bool payoffs_hold = true;
  try {
    for (long r_a = 2; r_a <= 100; ++r_a) {
      for (long r_d = 2; r_d <= 100; ++r_d) {
        auto spec = base_spec(r_a, r_d);
        auto game = make_structural<Rational>(spec);
        auto report = summarize_structural<Rational>(spec, game, unequal_equilibrium(r_a, r_d));
        if (report.e_a + report.e_d != report.l_star) spends_hold = false;
        if (report.pi_a + report.pi_d != r_a + r_d - report.l_star) payoffs_hold = false;
      }
    }
  } catch (const std::exception& e) {
    c.expect(false, std::string("unexpected refusal: ") + e.what());
  }
  c.expect(spends_hold, "E(a) + E(d) = l* fails somewhere on the grid");
  c.expect(payoffs_hold, "payoff totals fail to add to r_a + r_d - l* somewhere on the grid");
}

TEST_CASE("04 large-endowment limits") {
  Criterion c("04", "large-endowment limits");
  Timer timer;
  const long r = 10000;
  auto spec = base_spec(r, r);
  auto game = make_structural<double>(spec);
  auto profile = unequal_equilibrium_double(r, r);
  auto verification = verify_structural<double>(game, profile, 1e-9);
  c.expect(verification.is_equilibrium, "profile fails verification at r = 10000");
  auto report = summarize_structural<double>(spec, game, profile);
  auto gaps = asymptotic_gaps(spec, report);
  c.expect(gaps.at("l_star_over_r") <= 3.0 / r,
           "l*/r gap " + fmt(gaps.at("l_star_over_r")) + " exceeds 3/r");
  c.expect(gaps.at("p_win") <= 0.01, "P(W) gap " + fmt(gaps.at("p_win")) + " exceeds 0.01");
  c.expect(gaps.at("e_a_over_r") <= 0.01,
           "E(a)/r gap " + fmt(gaps.at("e_a_over_r")) + " exceeds 0.01");
  c.expect(gaps.at("e_d_over_r") <= 0.01,
           "E(d)/r gap " + fmt(gaps.at("e_d_over_r")) + " exceeds 0.01");
  c.expect(gaps.at("attacker_share") <= 0.01,
           "payoff share gap " + fmt(gaps.at("attacker_share")) + " exceeds 0.01");
  c.expect(gaps.at("e_d_given_win_over_r") <= 0.02,
           "E(d|win)/r gap " + fmt(gaps.at("e_d_given_win_over_r")) + " exceeds 0.02");
  c.expect(gaps.at("e_d_given_loss_over_r") <= 0.02,
           "E(d|loss)/r gap " + fmt(gaps.at("e_d_given_loss_over_r")) + " exceeds 0.02");
  double t = timer.seconds();
  c.expect(t < 30.0, "runtime " + fmt(t) + " s exceeds the 30 s budget");
}

TEST_CASE("05 crossing sandwich bound") {
  Criterion c("05", "crossing sandwich bound");
  const double limit = 1.0 - 1.0 / std::numbers::e;
  auto table = upper_bound_table(10000);
  bool holds = true;
  long first_bad = 0;
  for (long r = 2; r <= 10000; ++r) {
    double l = static_cast<double>(table[r]);
    double rr = static_cast<double>(r);
    if (!((l - 1) / rr < limit && limit < (l + 2) / (rr + 1))) {
      holds = false;
      if (first_bad == 0) first_bad = r;
    }
  }
  c.expect(holds, "sandwich fails first at r = " + std::to_string(first_bad));
}

TEST_CASE("06 half endowment, half the pie") {
  Criterion c("06", "half endowment, half the pie");
  for (long r_d : {10L, 50L, 100L}) {
    long r_a = r_d / 2;
    auto spec = base_spec(r_a, r_d);
    auto game = make_structural<Rational>(spec);
    auto report = summarize_structural<Rational>(spec, game, unequal_equilibrium(r_a, r_d));
    c.expect(report.attacker_share == rational(1, 2),
             "attacker share is not exactly 1/2 at r_d = " + std::to_string(r_d));
  }
}

TEST_CASE("07 spare attacker budget is irrelevant") {
  Criterion c("07", "spare attacker budget is irrelevant");
  auto even = equal_equilibrium(50);
  bool identical = true;
  for (long r_a = 51; r_a <= 150 && identical; ++r_a) {
    auto rich = unequal_equilibrium(r_a, 50);
    for (long j = 0; j <= 50; ++j) {
      if (rich.d[j] != even.d[j] || rich.a[j] != even.a[j]) identical = false;
    }
    for (long i = 51; i <= r_a; ++i) {
      if (rich.a[i] != 0) identical = false;
    }
  }
  c.expect(identical, "a richer attacker's profile differs from the equal-endowment one");
}

TEST_CASE("08 tie-breaking equilibria") {
  Criterion c("08", "tie-breaking equilibria");

  GameSpec certain = base_spec(10, 10);
  certain.tie_win_prob = 1.0;
  auto certain_tables = build_payoff_tables<double>(certain);
  auto shifted = tie_break_equilibrium(10, 1);
  c.expect(shifted.shifted, "t = 1 does not shift the defender's support");
  auto shifted_report =
      verify_equilibrium<double>(certain_tables, to_double_profile(shifted.profile), 1e-9);
  c.expect(shifted_report.is_equilibrium, "shifted profile fails at t = 1");

  GameSpec mild = base_spec(10, 10);
  mild.tie_win_prob = 0.1;
  auto mild_tables = build_payoff_tables<double>(mild);
  auto unshifted = tie_break_equilibrium(10, rational(1, 10));
  auto mild_report =
      verify_equilibrium<double>(mild_tables, to_double_profile(unshifted.profile), 1e-9);
  c.expect(mild_report.is_equilibrium, "zero-tie profile is claimed to survive t = 0.1 unchanged");
  c.expect(std::abs(mild_report.value_a - 11.0) <= 1e-9,
           "attacker value is claimed to reach (1 + t) * r = 11 at t = 0.1");
  if (!mild_report.is_equilibrium) {
    c.note("at t = 0.1 the zero-tie profile's attacker payoffs spread by " +
           fmt(mild_report.support_payoff_spread_a) + " across its own support");
    c.note("its actual profile value is " + fmt(mild_report.value_a) +
           "; no payoff in this game exceeds r + t = 10.1, so value 11 is unreachable");
    c.note("interior tie odds break the level-by-level indifference; only t at or past the "
           "threshold 1/(r - l*) admits the one-level shift that restores it");
  }
}

TEST_CASE("09 risk scenario directions") {
  Criterion c("09", "risk scenario directions");
  auto base = solve_game(base_spec(100, 100));
  auto solved = [&](RiskScenario scenario) {
    GameSpec spec = base_spec(100, 100);
    spec.risk = RiskSpec{scenario, 0.3};
    auto out = solve_game(spec);
    c.expect(out.verification.is_equilibrium,
             std::string("no verified equilibrium under ") + risk_scenario_name(scenario));
    return out.report;
  };
  auto uninvested = solved(RiskScenario::UninvestedEndowment);
  c.expect(uninvested.e_a > base.report.e_a, "E(a) does not rise when idle endowment is at risk");
  c.expect(uninvested.e_d > base.report.e_d, "E(d) does not rise when idle endowment is at risk");
  auto prize = solved(RiskScenario::AppropriatedValue);
  c.expect(prize.e_a < base.report.e_a, "E(a) does not fall when the prize is at risk");
  c.expect(prize.e_d < base.report.e_d, "E(d) does not fall when the prize is at risk");
  auto held = solved(RiskScenario::DefenderEndowment);
  c.expect(std::abs(held.e_a - base.report.e_a) <= 1e-9,
           "E(a) moves when only the defender's kept stake is scaled");
  c.expect(std::abs(held.e_d - base.report.e_d) <= 1e-9,
           "E(d) moves when only the defender's kept stake is scaled");
}

TEST_CASE("10 one-sided warm glow structure") {
  Criterion c("10", "one-sided warm glow structure");
  const long r = 100;
  const Rational w = 10;

  auto base = equal_equilibrium(r);
  auto defender_glow = warm_glow_equilibrium(r, r, 0, w);
  {
    GameSpec spec = base_spec(r, r);
    spec.warm_glow_d = 10.0;
    auto game = make_structural<Rational>(spec);
    c.expect(verify_structural<Rational>(game, defender_glow, 0).is_equilibrium,
             "defender-glow closed form fails its own exact verification");
  }
  bool attack_mix_unchanged = true;
  double worst = 0;
  for (long i = 0; i <= r; ++i) {
    double diff = std::abs(to_double(defender_glow.a[i]) - to_double(base.a[i]));
    worst = std::max(worst, diff);
    if (diff > 1e-9) attack_mix_unchanged = false;
  }
  c.expect(attack_mix_unchanged,
           "defender-only glow is claimed to leave the attack mix at the baseline");
  if (!attack_mix_unchanged) {
    c.note("the attack mix moves by " + fmt(worst) + " in L-infinity: a glow on the defender's "
           "side rescales the attacker's weights (a_0 goes " +
           fmt(to_double(base.a[0])) + " -> " + fmt(to_double(defender_glow.a[0])) + ")");
    bool defense_mix_unchanged = true;
    for (long j = 0; j <= r; ++j)
      if (defender_glow.d[j] != base.d[j]) defense_mix_unchanged = false;
    c.note(std::string("what does stay put is the defender's own mix: ") +
           (defense_mix_unchanged ? "it equals the baseline exactly" : "unexpectedly, it moved"));
  }

  auto attacker_glow = warm_glow_equilibrium(r, r, w, 0);
  auto both_glow = warm_glow_equilibrium(r, r, w, w);
  c.expect(attacker_glow.d == both_glow.d,
           "defender mix differs between attacker-only and both-sides glow");
}

TEST_CASE("11 production grid equilibria") {
  Criterion c("11", "production grid equilibria");
  const long r = 10;
  auto base = solve_game(base_spec(r, r));
  long closed_form_points = 0;
  long fallback_points = 0;
  for (long cost = 2; cost <= 10; ++cost) {
    for (double q : {1.0, 3.0, 5.0}) {
      for (int scenario = 0; scenario < 3; ++scenario) {
        GameSpec spec = base_spec(r, r);
        ProductionSpec prod{cost, static_cast<double>(cost) + q};
        if (scenario == 0 || scenario == 2) spec.production_a = prod;
        if (scenario == 1 || scenario == 2) spec.production_d = prod;
        auto tag = " at (c = " + std::to_string(cost) + ", q = " + fmt(q) + ", scenario " +
                   std::to_string(scenario) + ")";
        try {
          auto out = solve_game(spec);
          c.expect(out.verification.is_equilibrium, "unverified equilibrium" + tag);
          if (out.method == SolveMethod::ClosedForm) {
            ++closed_form_points;
          } else {
            ++fallback_points;
          }
          auto tables = build_payoff_tables<double>(spec);
          auto found = enumerate_equilibria(tables, 1e-9);
          c.expect(found.size() == 1, "expected a unique equilibrium, found " +
                                          std::to_string(found.size()) + tag);
          if (found.size() == 1)
            c.expect(linf(found[0], out.profile) <= 1e-9,
                     "enumeration disagrees with the solved profile" + tag);
        } catch (const SolveFailure& e) {
          c.expect(false, std::string("solve failed: ") + e.what() + tag);
        }
      }
    }
  }
  c.note("closed form answered " + std::to_string(closed_form_points) + " grid points, " +
         std::to_string(fallback_points) + " went to fallback paths");

  GameSpec cheap_defender = base_spec(r, r);
  cheap_defender.production_d = ProductionSpec{2, 7.0};
  auto cheap = solve_game(cheap_defender);
  c.expect(cheap.report.p_win > base.report.p_win,
           "cheap high-surplus defender production fails to raise P(W)");

  GameSpec costly_attacker = base_spec(r, r);
  costly_attacker.production_a = ProductionSpec{10, 15.0};
  auto costly = solve_game(costly_attacker);
  c.expect(costly.report.e_a < base.report.e_a,
           "an expensive high-surplus outside option fails to pull the attacker out");
}
