#pragma once

// Certificates that a truncated fit is the global least-squares projection.
//
// With β(f) = ⟨f, f - p̃⟩ and the gap
//   P_f(l) = F^k_f(l) - F^k_p̃(l) - β(f) mᵏ_l,
// the probability-constrained projection p̂ is the unique k-monotone pmf with
// P_f >= 0 everywhere and P_f = 0 on its k-knots. The cone projection p̂* has
// the same characterization with β replaced by 0. Past τ = max(s_f, s̃) the
// gap is a polynomial in l, so only finitely many l need checking.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kmono/seq.hpp"
#include "kmono/sra.hpp"

namespace kmono {

/// Relative tolerance for gap inequalities: |gap(l)| scale is 1 + mᵏ_l.
inline constexpr double kGapTol = 1e-8;
/// Upper clamp on the Cauchy bound M.
inline constexpr double kMaxCauchyBound = 1e6;

double beta(const DiscreteSeq& f, const ProbSeq& p_tilde);

/// F^k_f(l) - F^k_p̃(l) - beta * mᵏ_l.
double characterization_gap(const DiscreteSeq& f, const ProbSeq& p_tilde,
                            unsigned k, std::size_t l, double beta_value);
/// Same, with beta = β(f) in Probability mode and 0 in Cone mode.
double characterization_gap(const DiscreteSeq& f, const ProbSeq& p_tilde,
                            unsigned k, std::size_t l, Mode mode);

/// Tail polynomial of the gap, valid for l >= tau. Coefficients are in the
/// shifted variable x = l - tau: P(tau + x) = Σ coeffs[d] x^d.
struct PolyBound {
  std::size_t tau = 0;
  std::vector<double> coeffs;      // degree <= k
  std::optional<unsigned> degree;  // empty when P is identically zero
  double leading = 0.0;
  /// Every l > M has P(l) of the sign of `leading`. Clamped to
  /// [tau + 1, kMaxCauchyBound].
  double M = 0.0;
  bool clamped = false;

  double eval(std::size_t l) const;
};

PolyBound poly_tail(const DiscreteSeq& f, const ProbSeq& p_tilde, unsigned k,
                    double beta_value);

struct StopReport {
  std::string criterion;  // "general" or "k34"
  bool passed = false;
  double beta = 0.0;
  std::size_t tau = 0;
  /// Last l checked: floor(M) for "general", s'+1 for "k34".
  std::size_t checked_up_to = 0;
  double M = 0.0;
  bool M_clamped = false;
  std::optional<std::size_t> first_violation;
  std::string reason;  // empty on success
};

/// Leading coefficient positive, gap >= 0 on l <= M, equality on k-knots.
StopReport check_general(const DiscreteSeq& f, const ProbSeq& p_tilde,
                         unsigned k, Mode mode = Mode::Probability);

/// The k in {3, 4} certificate: gap >= 0 on l <= s'+1, equality on knots,
/// lower-order primitives at s'+1, β(f) <= 0. Cone mode uses β = 0 and
/// includes the j = 1 (mass) condition.
StopReport check_k34(const DiscreteSeq& f, const ProbSeq& p_tilde, unsigned k,
                     Mode mode = Mode::Probability);

/// k in {3, 4} -> check_k34, otherwise check_general.
StopReport check(const DiscreteSeq& f, const ProbSeq& p_tilde, unsigned k,
                 Mode mode);

/// Σ_{i<=a} (a - i)^u (f(i) - p̃(i)) - beta * Σ_{i<=a} (a - i)^u.
double moment_gap(const DiscreteSeq& f, const ProbSeq& p_tilde, std::size_t a,
                  unsigned u, double beta_value);

}  // namespace kmono
