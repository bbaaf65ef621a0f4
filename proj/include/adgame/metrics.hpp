#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "adgame/game_spec.hpp"
#include "adgame/profile.hpp"
#include "adgame/solver.hpp"
#include "adgame/tables.hpp"

namespace adgame {

template <typename T>
struct EquilibriumReport {
  long l_star = 0;  // top of the defender's support
  T e_a{};
  T e_d{};
  T p_win{};
  T pi_a{};
  T pi_d{};
  T attacker_share{};
  T social_waste{};
  T attack_prob{};
  // Undefined when the conditioning event has probability zero.
  std::optional<T> e_d_given_win;
  std::optional<T> e_d_given_loss;
  // Undefined when the attacker never attacks.
  std::optional<T> attack_force;
};

struct NotAnEquilibrium : std::runtime_error {
  NotAnEquilibrium(const std::string& what, double max_slack)
      : std::runtime_error(what), max_slack(max_slack) {}
  double max_slack = 0.0;
};

// Derived statistics for a verified profile; refuses anything that fails the
// best-response check at epsilon (the type's default when omitted).
template <typename T>
EquilibriumReport<T> summarize(const GameSpec& spec, const GameTables<T>& tables,
                               const Profile<T>& profile,
                               const T& epsilon = default_epsilon<T>());

// Same statistics in O(r_a + r_d) off the separable structure.
template <typename T>
EquilibriumReport<T> summarize_structural(const GameSpec& spec, const StructuralGame<T>& game,
                                          const Profile<T>& profile,
                                          const T& epsilon = default_epsilon<T>());

// Distances of the scale-free statistics from their large-R limits; only
// defined for the base game with equal endowments.
std::map<std::string, double> asymptotic_gaps(const GameSpec& spec,
                                              const EquilibriumReport<double>& report);

}  // namespace adgame
