#include "kmono/seq.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "kmono/binomial.hpp"

namespace kmono {

DiscreteSeq::DiscreteSeq(std::vector<double> values) : values_(std::move(values)) {
  while (!values_.empty() && values_.back() == 0.0) values_.pop_back();
}

std::optional<std::size_t> DiscreteSeq::smax() const noexcept {
  if (values_.empty()) return std::nullopt;
  return values_.size() - 1;
}

std::vector<double> DiscreteSeq::dense(std::size_t horizon) const {
  std::vector<double> out(horizon + 1, 0.0);
  const std::size_t n = std::min(values_.size(), horizon + 1);
  std::copy_n(values_.begin(), n, out.begin());
  return out;
}

double DiscreteSeq::sum() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

namespace {

template <typename Op>
DiscreteSeq zip(const DiscreteSeq& a, const DiscreteSeq& b, Op op) {
  const std::size_t n = std::max(a.size(), b.size());
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = op(a[i], b[i]);
  return DiscreteSeq(std::move(out));
}

}  // namespace

DiscreteSeq operator+(const DiscreteSeq& a, const DiscreteSeq& b) {
  return zip(a, b, std::plus<>{});
}

DiscreteSeq operator-(const DiscreteSeq& a, const DiscreteSeq& b) {
  return zip(a, b, std::minus<>{});
}

DiscreteSeq operator*(double s, const DiscreteSeq& a) {
  std::vector<double> out(a.values().begin(), a.values().end());
  for (double& v : out) v *= s;
  return DiscreteSeq(std::move(out));
}

double dot(const DiscreteSeq& a, const DiscreteSeq& b) noexcept {
  const std::size_t n = std::min(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double distance_sq(const DiscreteSeq& a, const DiscreteSeq& b) noexcept {
  const std::size_t n = std::max(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double max_abs_diff(const DiscreteSeq& a, const DiscreteSeq& b) noexcept {
  const std::size_t n = std::max(a.size(), b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

ProbSeq ProbSeq::from(DiscreteSeq f, double tol) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] < 0.0) {
      throw std::invalid_argument("pmf has negative entry at index " +
                                  std::to_string(i));
    }
  }
  const double mass = f.sum();
  if (std::abs(mass - 1.0) > tol) {
    throw std::invalid_argument("pmf mass " + std::to_string(mass) +
                                " differs from 1");
  }
  return ProbSeq(std::move(f));
}

namespace {

// Signed binomial weights (-1)^(k-h) C(k,h), h = 0..k.
std::vector<double> difference_weights(unsigned k) {
  if (k == 0) throw std::invalid_argument("difference order k must be >= 1");
  std::vector<double> w(k + 1);
  for (unsigned h = 0; h <= k; ++h) {
    const double c = to_double(binomial(k, h));
    w[h] = ((k - h) % 2 == 0) ? c : -c;
  }
  return w;
}

double apply_weights(const DiscreteSeq& f, const std::vector<double>& w,
                     std::size_t i) {
  double s = 0.0;
  for (std::size_t h = 0; h < w.size(); ++h) s += w[h] * f[i + h];
  return s;
}

}  // namespace

DiscreteSeq diff(const DiscreteSeq& f, unsigned k) {
  const auto w = difference_weights(k);
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = apply_weights(f, w, i);
  return DiscreteSeq(std::move(out));
}

double signed_diff(const DiscreteSeq& f, unsigned k, std::size_t i) {
  const double d = apply_weights(f, difference_weights(k), i);
  return (k % 2 == 0) ? d : -d;
}

std::vector<double> primitives(const DiscreteSeq& f, unsigned j,
                               std::size_t horizon) {
  std::vector<double> acc = f.dense(horizon);
  for (unsigned pass = 0; pass < j; ++pass) {
    double run = 0.0;
    for (double& v : acc) {
      run += v;
      v = run;
    }
  }
  return acc;
}

double primitive(const DiscreteSeq& f, unsigned j, std::size_t l) {
  return primitives(f, j, l)[l];
}

MonotonyCheck is_kmonotone(const DiscreteSeq& f, unsigned k, double tol) {
  const DiscreteSeq d = diff(f, k);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  MonotonyCheck out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (sign * d[i] < -tol) out.violations.push_back(i);
  }
  out.monotone = out.violations.empty();
  return out;
}

std::vector<std::size_t> knots(const DiscreteSeq& f, unsigned k, double tol) {
  const DiscreteSeq d = diff(f, k);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (sign * d[i] > tol) out.push_back(i);
  }
  return out;
}

bool is_strictly_kmonotone(const DiscreteSeq& f, unsigned k, double tol) {
  return knots(f, k, tol).size() == f.size();
}

}  // namespace kmono
