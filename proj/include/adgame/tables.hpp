#pragma once

#include <vector>

#include "adgame/game_spec.hpp"
#include "adgame/rational.hpp"

namespace adgame {

// Every game variant here is separable:
//   attacker payoff(i, j) = keep_a[i] + gain_a[j] when the attack wins,
//                           keep_a[i]             otherwise,
//   defender payoff(i, j) = keep_d[j] when the defense holds, 0 otherwise,
// with a tie at i == j treated as an attacker win with probability tie_win
// (payoffs blended linearly). keep/gain fold in risk multipliers, warm glow
// and production bonuses, so this struct is the single source of truth for
// payoffs; the dense tables below are generated from it.
template <typename T>
struct StructuralGame {
  long r_a = 0;
  long r_d = 0;
  T tie_win{};
  std::vector<T> keep_a;  // size r_a + 1
  std::vector<T> gain_a;  // size r_d + 1
  std::vector<T> keep_d;  // size r_d + 1

  T pi_a(long i, long j) const {
    if (j < i) return keep_a[i] + gain_a[j];
    if (j == i) return keep_a[i] + tie_win * gain_a[i];
    return keep_a[i];
  }
  T pi_d(long i, long j) const {
    if (i < j) return keep_d[j];
    if (i == j) return (T(1) - tie_win) * keep_d[j];
    return T(0);
  }
};

template <typename T>
StructuralGame<T> make_structural(const GameSpec& spec);

template <typename T>
struct GameTables {
  long r_a = 0;
  long r_d = 0;
  std::vector<std::vector<T>> pi_a;  // (r_a + 1) x (r_d + 1)
  std::vector<std::vector<T>> pi_d;
};

template <typename T>
GameTables<T> build_payoff_tables(const GameSpec& spec);

}  // namespace adgame
