#pragma once

// Finitely supported real sequences on the non-negative integers, with the
// forward difference operator, iterated primitives and k-monotony tests.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace kmono {

/// Default tolerance for monotony and knot tests.
inline constexpr double kMonotonyTol = 1e-10;

/// Dense storage of a sequence f on {0, 1, ...} with f(i) = 0 past smax().
/// Trailing zeros are trimmed on construction, so size() == smax() + 1.
class DiscreteSeq {
 public:
  DiscreteSeq() = default;
  explicit DiscreteSeq(std::vector<double> values);

  /// f(i); zero beyond the stored support.
  double operator[](std::size_t i) const noexcept {
    return i < values_.size() ? values_[i] : 0.0;
  }

  /// Index of the last nonzero entry, empty for the zero sequence.
  std::optional<std::size_t> smax() const noexcept;
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  std::span<const double> values() const noexcept { return values_; }

  /// Values on {0..horizon}, zero padded.
  std::vector<double> dense(std::size_t horizon) const;

  double sum() const noexcept;

  friend bool operator==(const DiscreteSeq&, const DiscreteSeq&) = default;

 private:
  std::vector<double> values_;
};

DiscreteSeq operator+(const DiscreteSeq& a, const DiscreteSeq& b);
DiscreteSeq operator-(const DiscreteSeq& a, const DiscreteSeq& b);
DiscreteSeq operator*(double s, const DiscreteSeq& a);

double dot(const DiscreteSeq& a, const DiscreteSeq& b) noexcept;
/// Squared l2 distance.
double distance_sq(const DiscreteSeq& a, const DiscreteSeq& b) noexcept;
double max_abs_diff(const DiscreteSeq& a, const DiscreteSeq& b) noexcept;

/// A probability mass function: entries >= 0 and summing to one.
class ProbSeq {
 public:
  /// Throws std::invalid_argument if `f` has a negative entry or its mass
  /// differs from one by more than `tol`.
  static ProbSeq from(DiscreteSeq f, double tol = 1e-12);

  const DiscreteSeq& seq() const noexcept { return seq_; }
  operator const DiscreteSeq&() const noexcept { return seq_; }
  double operator[](std::size_t i) const noexcept { return seq_[i]; }
  std::size_t smax() const noexcept { return *seq_.smax(); }

 private:
  explicit ProbSeq(DiscreteSeq f) : seq_(std::move(f)) {}
  DiscreteSeq seq_;
};

/// k-th forward difference by the binomial closed form
///   Δ^k f(i) = Σ_h C(k,h) (-1)^(k-h) f(i+h),
/// evaluated on [0, smax]. Throws std::invalid_argument for k == 0.
DiscreteSeq diff(const DiscreteSeq& f, unsigned k);

/// (-1)^k Δ^k f(i) at a single index.
double signed_diff(const DiscreteSeq& f, unsigned k, std::size_t i);

/// F^j_f(l): j cumulative-sum passes evaluated at l.
double primitive(const DiscreteSeq& f, unsigned j, std::size_t l);

/// F^j_f(0..horizon) in one sweep.
std::vector<double> primitives(const DiscreteSeq& f, unsigned j,
                               std::size_t horizon);

struct MonotonyCheck {
  bool monotone = true;
  std::vector<std::size_t> violations;
};

/// (-1)^k Δ^k f(i) >= -tol for every i in [0, smax].
MonotonyCheck is_kmonotone(const DiscreteSeq& f, unsigned k,
                           double tol = kMonotonyTol);

/// Indices i with (-1)^k Δ^k f(i) > tol.
std::vector<std::size_t> knots(const DiscreteSeq& f, unsigned k,
                               double tol = kMonotonyTol);

/// Every index of [0, smax] is a k-knot.
bool is_strictly_kmonotone(const DiscreteSeq& f, unsigned k,
                           double tol = kMonotonyTol);

}  // namespace kmono
