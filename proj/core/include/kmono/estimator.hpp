#pragma once

// Global least-squares projections of an empirical pmf:
//   p̂  = argmin ‖f - p̃‖² over k-monotone pmfs        (Mode::Probability)
//   p̂* = argmin ‖f - p̃‖² over k-monotone sequences   (Mode::Cone)
//
// fit() solves the problem truncated to knots {0..L}, certifies the result
// with the stopping criterion, and enlarges L until the certificate holds.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kmono/seq.hpp"
#include "kmono/spline.hpp"
#include "kmono/sra.hpp"
#include "kmono/stopping.hpp"

namespace kmono {

inline constexpr std::size_t kMaxTruncation = 100000;

struct FitOptions {
  double deriv_tol = 1e-10;
  /// Overrides the first truncation level of the schedule.
  std::optional<std::size_t> initial_L;
  std::size_t max_L = kMaxTruncation;
};

struct EstimateResult {
  Mode mode = Mode::Probability;
  unsigned k = 2;
  DiscreteSeq fitted;
  SplineMixture mixture;
  std::vector<std::size_t> knots;
  double beta = 0.0;
  std::size_t shat = 0;
  std::size_t L_used = 0;
  StopReport criterion;
  std::size_t iterations = 0;  // SRA outer iterations at L_used
  std::size_t attempts = 0;    // truncation levels tried
};

class CriterionError : public std::runtime_error {
 public:
  CriterionError(const std::string& what, std::size_t last_L, StopReport report)
      : std::runtime_error(what), last_L_(last_L), report_(std::move(report)) {}
  std::size_t last_L() const noexcept { return last_L_; }
  const StopReport& report() const noexcept { return report_; }

 private:
  std::size_t last_L_;
  StopReport report_;
};

/// L_0 = s̃ + 2k, L_{a+1} = 2 L_a + k. Throws std::length_error past `cap`.
std::size_t l_schedule(std::size_t s_tilde, unsigned k, std::size_t attempt,
                       std::size_t cap = kMaxTruncation);

EstimateResult fit(const ProbSeq& p_tilde, unsigned k, Mode mode,
                   const FitOptions& options = {});

}  // namespace kmono
