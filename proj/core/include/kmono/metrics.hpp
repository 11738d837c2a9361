#pragma once

// Losses between a truth p and an estimate, scalar functionals, and the
// replication summary (mean, SE, BIAS, RMSEP).

#include <atomic>
#include <cstddef>
#include <vector>

#include "kmono/seq.hpp"

namespace kmono {

/// Estimates may carry rounding negatives; entries in [-this, 0) are clamped
/// to zero by hellinger_err, anything below throws.
inline constexpr double kNegativeClamp = 1e-12;

double l2_err(const DiscreteSeq& p, const DiscreteSeq& q);
double hellinger_err(const DiscreteSeq& p, const DiscreteSeq& q);
double tv_err(const DiscreteSeq& p, const DiscreteSeq& q);

/// Number of entries hellinger_err has clamped in this process.
std::size_t hellinger_clamp_count() noexcept;

/// Σ f(i) log f(i) with 0 log 0 = 0.
double entropy(const DiscreteSeq& f);
/// Σ i² f(i) - (Σ i f(i))², with f taken as given (no renormalization).
double variance(const DiscreteSeq& f);
double prob_at_zero(const DiscreteSeq& f);
double mass(const DiscreteSeq& f);

struct LossSummary {
  std::vector<double> values;
  double mean = 0.0;
  double se = 0.0;    // sqrt of the centered second moment, divisor R
  double bias = 0.0;  // mean - truth
  double rmsep = 0.0; // sqrt(bias² + se²)
};

LossSummary summarize(std::vector<double> values, double truth);

}  // namespace kmono
