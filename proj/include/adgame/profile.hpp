#pragma once

#include <vector>

#include "adgame/rational.hpp"

namespace adgame {

template <typename T>
struct Profile {
  std::vector<T> a;  // attack distribution over levels 0..r_a
  std::vector<T> d;  // defense distribution over levels 0..r_d
};

// Support membership. Doubles carry solver dust, so anything at or below
// 1e-12 counts as zero; rationals are exact.
inline bool in_support(double x) { return x > 1e-12; }
inline bool in_support(const Rational& x) { return sgn(x) > 0; }

template <typename T>
long max_support_index(const std::vector<T>& v) {
  long last = -1;
  for (long i = 0; i < static_cast<long>(v.size()); ++i) {
    if (in_support(v[i])) last = i;
  }
  return last;
}

inline Profile<double> to_double_profile(const Profile<Rational>& p) {
  Profile<double> out;
  out.a.reserve(p.a.size());
  out.d.reserve(p.d.size());
  for (const auto& x : p.a) out.a.push_back(to_double(x));
  for (const auto& x : p.d) out.d.push_back(to_double(x));
  return out;
}

}  // namespace adgame
