#include "adgame/solver.hpp"

#include <algorithm>
#include <cmath>

#include "eval.hpp"

namespace adgame {

template <typename T>
VerificationReport<T> verify_equilibrium(const GameTables<T>& tables, const Profile<T>& profile,
                                         const T& epsilon) {
  auto ev = detail::evaluate_dense(tables, profile);
  return detail::report_from_eval(ev, profile, epsilon);
}

template <typename T>
VerificationReport<T> verify_structural(const StructuralGame<T>& game, const Profile<T>& profile,
                                        const T& epsilon) {
  auto ev = detail::evaluate_structural(game, profile);
  return detail::report_from_eval(ev, profile, epsilon);
}

template VerificationReport<double> verify_equilibrium<double>(const GameTables<double>&,
                                                               const Profile<double>&,
                                                               const double&);
template VerificationReport<Rational> verify_equilibrium<Rational>(const GameTables<Rational>&,
                                                                   const Profile<Rational>&,
                                                                   const Rational&);
template VerificationReport<double> verify_structural<double>(const StructuralGame<double>&,
                                                              const Profile<double>&,
                                                              const double&);
template VerificationReport<Rational> verify_structural<Rational>(const StructuralGame<Rational>&,
                                                                  const Profile<Rational>&,
                                                                  const Rational&);

namespace {

// Gaussian elimination with partial pivoting; empty result means singular.
std::vector<double> solve_linear(std::vector<std::vector<double>> m, std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
    }
    if (std::fabs(m[pivot][col]) < 1e-12) return {};
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t row = n; row-- > 0;) {
    double s = rhs[row];
    for (std::size_t c = row + 1; c < n; ++c) s -= m[row][c] * x[c];
    x[row] = s / m[row][row];
  }
  return x;
}

// One side's indifference system on a candidate support pair: rows equalize
// consecutive own strategies across the other side's unknown mix, last row is
// normalization. Returns the mix or empty on singular/large-residual/negative
// solutions.
template <typename Payoff>
std::vector<double> solve_support_side(const std::vector<long>& own,
                                       const std::vector<long>& other, Payoff payoff) {
  const std::size_t n = other.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  std::vector<double> rhs(n, 0.0);
  double scale = 1.0;
  for (std::size_t row = 0; row + 1 < own.size(); ++row) {
    for (std::size_t c = 0; c < n; ++c) {
      m[row][c] = payoff(own[row + 1], other[c]) - payoff(own[row], other[c]);
      scale = std::max(scale, std::fabs(m[row][c]));
    }
  }
  for (std::size_t c = 0; c < n; ++c) m[n - 1][c] = 1.0;
  rhs[n - 1] = 1.0;

  std::vector<std::vector<double>> saved = m;
  std::vector<double> x = solve_linear(std::move(m), rhs);
  if (x.empty()) return {};
  for (double& v : x) {
    if (v < -1e-12) return {};
    if (v < 0.0) v = 0.0;
  }
  for (std::size_t row = 0; row < n; ++row) {
    double s = row + 1 == n ? -1.0 : 0.0;
    for (std::size_t c = 0; c < n; ++c) s += saved[row][c] * x[c];
    if (std::fabs(s) > 1e-10 * scale) return {};
  }
  return x;
}

}  // namespace

IndifferenceResult solve_indifference(const GameTables<double>& t) {
  const long r_a = t.r_a;
  const long r_d = t.r_d;
  const long cap = std::min(r_a, r_d);
  const double flat_tol = 1e-9;

  // Shape: when the attack falls short the attacker's payoff must not depend
  // on the defense level, and must strictly fall with own spend; mirrored for
  // the defender. Ties must behave like losses for the attacker and wins for
  // the defender (cells are read, not assumed).
  std::vector<double> lose(cap + 1);
  for (long i = 0; i <= cap; ++i) {
    double ref = t.pi_a[i][i];
    for (long j = i; j <= r_d; ++j) {
      if (std::fabs(t.pi_a[i][j] - ref) > flat_tol) {
        throw StructureError(i, "attacker payoff varies across defenses that hold");
      }
    }
    lose[i] = ref;
  }
  for (long i = 0; i < cap; ++i) {
    if (!(lose[i] - lose[i + 1] > 1e-12)) {
      throw StructureError(i, "attacker losing payoff must strictly fall with own spend");
    }
  }
  for (long j = 0; j <= cap; ++j) {
    double ref = t.pi_d[0][j];
    for (long i = 0; i <= std::min(j, r_a); ++i) {
      if (std::fabs(t.pi_d[i][j] - ref) > flat_tol) {
        throw StructureError(j, "defender payoff varies across attacks that fall short");
      }
    }
    for (long i = j + 1; i <= r_a; ++i) {
      if (std::fabs(t.pi_d[i][j] - t.pi_d[r_a][j]) > flat_tol) {
        throw StructureError(j, "defender payoff varies across attacks that break through");
      }
    }
  }

  // Defender mix from the attacker's indifference, level by level.
  IndifferenceResult out;
  out.profile.d.assign(r_d + 1, 0.0);
  out.profile.a.assign(r_a + 1, 0.0);
  std::vector<double>& d = out.profile.d;
  double cum = 0.0;
  long l = cap;
  for (long i = 0; i < cap; ++i) {
    double num = (1.0 - cum) * (lose[i + 1] - lose[i]);
    for (long j = 0; j < i; ++j) num += d[j] * (t.pi_a[i + 1][j] - t.pi_a[i][j]);
    double den = t.pi_a[i + 1][i] - lose[i + 1];
    if (!(den > 1e-12)) throw StructureError(i, "outbidding the defense must strictly pay");
    double di = -num / den;
    if (!(di > 0.0)) throw StructureError(i, "defender weight from the recursion is not positive");
    if (cum + di >= 1.0) {
      l = i;
      break;
    }
    d[i] = di;
    cum += di;
  }
  d[l] = std::max(0.0, 1.0 - cum);

  // Attacker mix from the defender's indifference across {0..l}.
  std::vector<double>& a = out.profile.a;
  const double value_d = t.pi_d[0][l];
  double cum_a_prev = 0.0;
  for (long j = 0; j < l; ++j) {
    double dw = t.pi_d[0][j];
    double dl = t.pi_d[r_a][j];
    double den = dw - dl;
    if (!(den > 1e-12)) throw StructureError(j, "defending must strictly beat conceding");
    double cum_a = (value_d - dl) / den;
    double aj = cum_a - cum_a_prev;
    if (aj < -1e-9) throw StructureError(j, "attacker weight from the recursion is negative");
    a[j] = std::max(0.0, aj);
    cum_a_prev = cum_a;
  }
  if (1.0 - cum_a_prev < -1e-9) throw StructureError(l, "attacker weights from the recursion exceed 1");
  a[l] = std::max(0.0, 1.0 - cum_a_prev);

  out.verification = verify_equilibrium(t, out.profile, 1e-9);
  if (out.verification.is_equilibrium) {
    out.path = SolvePath::Indifference;
    return out;
  }

  double slack = std::max(std::max(out.verification.max_slack_a, out.verification.max_slack_d),
                          std::max(out.verification.support_payoff_spread_a,
                                   out.verification.support_payoff_spread_d));
  if ((r_a + 1) * (r_d + 1) <= kEnumerationCellGuard) {
    auto all = enumerate_equilibria(t, 1e-9);
    if (!all.empty()) {
      out.profile = all.front();
      out.path = SolvePath::Enumeration;
      out.verification = verify_equilibrium(t, out.profile, 1e-9);
      return out;
    }
    throw SolveError("indifference profile failed verification and enumeration found no equilibrium",
                     slack);
  }
  throw SolveError("indifference profile failed verification and the game is too large to enumerate",
                   slack);
}

std::vector<Profile<double>> enumerate_equilibria(const GameTables<double>& t, double epsilon) {
  const long r_a = t.r_a;
  const long r_d = t.r_d;
  if ((r_a + 1) * (r_d + 1) > kEnumerationCellGuard) {
    throw std::invalid_argument("game too large to enumerate");
  }

  std::vector<Profile<double>> kept;
  auto payoff_a = [&](long i, long j) { return t.pi_a[i][j]; };
  auto payoff_d_t = [&](long j, long i) { return t.pi_d[i][j]; };  // defender viewed as row player

  auto try_pair = [&](const std::vector<long>& sa, const std::vector<long>& sd) {
    if (sa.size() != sd.size()) return;
    std::vector<double> d = solve_support_side(sa, sd, payoff_a);
    if (d.empty()) return;
    std::vector<double> a = solve_support_side(sd, sa, payoff_d_t);
    if (a.empty()) return;
    Profile<double> p;
    p.a.assign(r_a + 1, 0.0);
    p.d.assign(r_d + 1, 0.0);
    for (std::size_t k = 0; k < sa.size(); ++k) p.a[sa[k]] = a[k];
    for (std::size_t k = 0; k < sd.size(); ++k) p.d[sd[k]] = d[k];
    auto check = verify_equilibrium(t, p, epsilon);
    if (!check.is_equilibrium) return;
    for (const auto& q : kept) {
      double dist = 0.0;
      for (long i = 0; i <= r_a; ++i) dist = std::max(dist, std::fabs(q.a[i] - p.a[i]));
      for (long j = 0; j <= r_d; ++j) dist = std::max(dist, std::fabs(q.d[j] - p.d[j]));
      if (dist <= 1e-7) return;
    }
    kept.push_back(std::move(p));
  };

  if (std::max(r_a, r_d) <= 6) {
    // Small enough for every support pair of equal size.
    std::vector<std::vector<long>> subsets_a, subsets_d;
    for (unsigned mask = 1; mask < (1u << (r_a + 1)); ++mask) {
      std::vector<long> s;
      for (long i = 0; i <= r_a; ++i) {
        if (mask & (1u << i)) s.push_back(i);
      }
      subsets_a.push_back(std::move(s));
    }
    for (unsigned mask = 1; mask < (1u << (r_d + 1)); ++mask) {
      std::vector<long> s;
      for (long j = 0; j <= r_d; ++j) {
        if (mask & (1u << j)) s.push_back(j);
      }
      subsets_d.push_back(std::move(s));
    }
    for (const auto& sa : subsets_a) {
      for (const auto& sd : subsets_d) try_pair(sa, sd);
    }
  } else {
    // Prefix supports {0..m} x {0..m} and the defender variant {0..m-1} x {1..m},
    // the two shapes mixed equilibria take in this family. Equal-size systems
    // only: unequal sizes leave one side's indifference underdetermined.
    for (long m = 0; m <= std::min(r_a, r_d); ++m) {
      std::vector<long> s(m + 1);
      for (long i = 0; i <= m; ++i) s[i] = i;
      try_pair(s, s);
    }
    for (long top = 1; top <= r_d; ++top) {
      if (top - 1 > r_a) break;
      std::vector<long> sa(top), sd(top);
      for (long i = 0; i < top; ++i) sa[i] = i;
      for (long j = 0; j < top; ++j) sd[j] = j + 1;
      try_pair(sa, sd);
    }
  }

  std::sort(kept.begin(), kept.end(), [](const Profile<double>& x, const Profile<double>& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.d < y.d;
  });
  return kept;
}

}  // namespace adgame
