#pragma once

// Discrete spline sequences Q̄ᵏⱼ(i) = C(j-i+k-1, k-1) 1{i <= j}, their masses,
// and the mixture representation of k-monotone sequences.
//
// Mixtures are stored on the normalized basis Qᵏⱼ = Q̄ᵏⱼ / mᵏⱼ, so the weights
// sum to the mass of the represented sequence. Multiply by 1 / mᵏⱼ to get
// weights on the unnormalized basis.

#include <cstddef>
#include <map>

#include "kmono/binomial.hpp"
#include "kmono/seq.hpp"

namespace kmono {

/// Mixture weights below this are dropped by decompose().
inline constexpr double kDropThreshold = 1e-12;

u128 qbar_exact(unsigned k, std::size_t j, std::size_t i);
double qbar(unsigned k, std::size_t j, std::size_t i);

/// mᵏⱼ = Σᵢ Q̄ᵏⱼ(i) = C(j+k, k).
u128 mass_exact(unsigned k, std::size_t j);
double mass(unsigned k, std::size_t j);

/// Normalized spline, a pmf on {0..j}.
double q(unsigned k, std::size_t j, std::size_t i);

/// Q̄ᵏⱼ as a sequence on {0..j}.
DiscreteSeq qbar_seq(unsigned k, std::size_t j);
DiscreteSeq q_seq(unsigned k, std::size_t j);

struct SplineMixture {
  unsigned k = 1;
  /// knot j -> π(j) on the normalized basis
  std::map<std::size_t, double> weights;

  double total() const noexcept;
  std::size_t max_knot() const;
  /// Weights on the unnormalized basis: π(j) / mᵏⱼ.
  std::map<std::size_t, double> unnormalized() const;
};

/// π(j) = (-1)ᵏ Δᵏ f(j) mᵏⱼ on [0, smax].
/// Throws std::invalid_argument if some (-1)ᵏ Δᵏ f(j) < -tol.
SplineMixture decompose(const DiscreteSeq& f, unsigned k,
                        double drop = kDropThreshold, double tol = kMonotonyTol);

/// f(i) = Σⱼ π(j) Qᵏⱼ(i).
DiscreteSeq compose(const SplineMixture& mix);

}  // namespace kmono
