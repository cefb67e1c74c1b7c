#pragma once

#include <random>

#include "tilekit/tiles.hpp"

namespace tilekit::testing {

// Random rule set over m tiles; roughly `forbidDensity` of entries are the
// sentinel, the rest drawn from small integers (0 when `unweighted`).
inline RuleSet randomRules(std::mt19937& rng, int m, bool unweighted, double forbidDensity = 0.35) {
  std::vector<std::string> names;
  for (int i = 0; i < m; ++i) names.push_back("t" + std::to_string(i + 1));
  RuleSet r = RuleSet::allZero(names);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> w(-3, 4);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      r.h(i, j) = coin(rng) < forbidDensity ? kForbid : (unweighted ? 0 : w(rng));
      r.v(i, j) = coin(rng) < forbidDensity ? kForbid : (unweighted ? 0 : w(rng));
    }
  return r;
}

inline void symmetrize(RuleSet& r, bool rotation) {
  const int m = r.size();
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      r.h(j, i) = r.h(i, j);
      r.v(j, i) = r.v(i, j);
    }
  if (rotation)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) r.v(i, j) = r.h(i, j);
}

inline Tiling randomTiling(std::mt19937& rng, int m, int n) {
  Tiling t(n, n);
  std::uniform_int_distribution<int> d(0, m - 1);
  for (auto& c : t.cells) c = d(rng);
  return t;
}

}  // namespace tilekit::testing
