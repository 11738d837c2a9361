#pragma once

// Support Reduction Algorithm for the least-squares fit of a spline mixture
// to an empirical pmf p̃ over knots {0..L}:
//
//   Ψ(π) = Σᵢ (Σⱼ π(j) Qᵏⱼ(i) - p̃(i))²
//
// Probability mode minimizes over mixtures summing to one (k-monotone pmfs);
// Cone mode only asks π >= 0 (k-monotone sequences).

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmono/seq.hpp"
#include "kmono/spline.hpp"

namespace kmono {

enum class Mode { Probability, Cone };

const char* to_string(Mode m) noexcept;

struct SolverConfig {
  unsigned k = 2;
  std::size_t L = 0;
  double deriv_tol = 1e-10;
  Mode mode = Mode::Probability;
  /// 0 selects the default 10 (L + 1).
  std::size_t max_outer_iters = 0;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unconstrained-sign minimizer on a fixed support.
struct SupportSolution {
  std::vector<double> weights;  // aligned with the support, normalized basis
  double lambda = 0.0;          // Lagrange multiplier, Probability mode only
};

struct SolverState {
  std::vector<std::size_t> support;  // sorted
  std::vector<double> weights;       // π(j) for j in support
  std::vector<double> fitted;        // compose(π) on {0..L}
  double lambda = 0.0;
  double psi = 0.0;
  /// Ψ after initialization and after each completed Step-2 block.
  std::vector<double> psi_trace;
  std::size_t outer_iterations = 0;
  std::size_t removals = 0;

  SplineMixture mixture(unsigned k) const;
};

/// Ψ evaluated on the horizon max(max knot, smax(p̃)).
double psi(const SplineMixture& mix, const ProbSeq& p_tilde);

/// Holds the basis tables for one (k, L, p̃) problem. Not thread-safe;
/// construct one per thread.
class SraSolver {
 public:
  SraSolver(SolverConfig config, const ProbSeq& p_tilde);

  const SolverConfig& config() const noexcept { return config_; }

  /// Minimizer of Ψ with support in `support` (signs unconstrained).
  /// Probability mode adds the sum-to-one constraint through λ_S.
  SupportSolution solve_on_support(const std::vector<std::size_t>& support) const;

  /// Directional derivatives toward δⱼ for all j in {0..L}.
  /// Probability mode: D_{δⱼ}Ψ(π) = 2 Σᵢ (Qⱼ(i) - f(i)) (f(i) - p̃(i)).
  /// Cone mode: ∂Ψ/∂π(j) = 2 Σᵢ Qⱼ(i) (f(i) - p̃(i)).
  std::vector<double> dir_derivs(const SolverState& state) const;
  double dir_deriv(const SolverState& state, std::size_t j) const;

  /// Builds a state (fitted values, Ψ) from a support and its weights.
  SolverState make_state(std::vector<std::size_t> support,
                         std::vector<double> weights) const;

  SolverState run() const;

 private:
  double column_value(std::size_t j, std::size_t i) const {
    return i <= j ? coeff_[j - i] / mass_[j] : 0.0;
  }

  SolverConfig config_;
  std::vector<double> target_;  // p̃ on {0..L}
  std::vector<double> coeff_;   // C(t+k-1, k-1), t = 0..L
  std::vector<double> mass_;    // mᵏⱼ, j = 0..L
  std::vector<double> target_proj_;  // ⟨Qⱼ, p̃⟩
};

/// Runs the SRA; throws SolverError if max_outer_iters is exceeded.
SolverState run(const SolverConfig& config, const ProbSeq& p_tilde);

}  // namespace kmono
