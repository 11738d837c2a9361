#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "kmono/empirical.hpp"
#include "kmono/seq.hpp"
#include "kmono/spline.hpp"

namespace testutil {

/// Random normalized mixture of up to `terms` splines with knots <= jmax.
inline kmono::SplineMixture random_mixture(std::mt19937_64& rng, unsigned k,
                                           std::size_t jmax, int terms = 3) {
  std::uniform_int_distribution<std::size_t> knot(0, jmax);
  std::uniform_real_distribution<double> w(0.1, 1.0);
  kmono::SplineMixture mix{k, {}};
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    const double v = w(rng);
    mix.weights[knot(rng)] += v;
    total += v;
  }
  for (auto& [j, v] : mix.weights) v /= total;
  return mix;
}

inline kmono::DiscreteSeq random_seq(std::mt19937_64& rng, std::size_t len,
                                     double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(len);
  for (double& x : v) x = u(rng);
  return kmono::DiscreteSeq(std::move(v));
}

/// Empirical pmf of n draws uniform on {0..s} with random weights.
inline kmono::ProbSeq random_empirical(std::mt19937_64& rng, std::size_t s,
                                       std::size_t n) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(s + 1);
  for (double& x : w) x = u(rng);
  std::discrete_distribution<std::size_t> d(w.begin(), w.end());
  kmono::CountTable t;
  for (std::size_t i = 0; i < n; ++i) t.add(d(rng));
  return kmono::empirical_pmf(t);
}

}  // namespace testutil
