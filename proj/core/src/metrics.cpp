#include "kmono/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kmono {
namespace {

std::atomic<std::size_t> g_clamps{0};

double checked_sqrt(double v, std::size_t i) {
  if (v >= 0.0) return std::sqrt(v);
  if (v >= -kNegativeClamp) {
    g_clamps.fetch_add(1, std::memory_order_relaxed);
    return 0.0;
  }
  throw std::domain_error("hellinger_err: negative entry " + std::to_string(v) +
                          " at index " + std::to_string(i));
}

}  // namespace

double l2_err(const DiscreteSeq& p, const DiscreteSeq& q) {
  return distance_sq(p, q);
}

double hellinger_err(const DiscreteSeq& p, const DiscreteSeq& q) {
  const std::size_t n = std::max(p.size(), q.size());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = checked_sqrt(p[i], i) - checked_sqrt(q[i], i);
    s += d * d;
  }
  return s;
}

std::size_t hellinger_clamp_count() noexcept {
  return g_clamps.load(std::memory_order_relaxed);
}

double tv_err(const DiscreteSeq& p, const DiscreteSeq& q) {
  const std::size_t n = std::max(p.size(), q.size());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

double entropy(const DiscreteSeq& f) {
  double s = 0.0;
  for (double v : f.values()) {
    if (v > 0.0) s += v * std::log(v);
  }
  return s;
}

double variance(const DiscreteSeq& f) {
  double m1 = 0.0, m2 = 0.0;
  const auto v = f.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = static_cast<double>(i);
    m1 += x * v[i];
    m2 += x * x * v[i];
  }
  return m2 - m1 * m1;
}

double prob_at_zero(const DiscreteSeq& f) { return f[0]; }

double mass(const DiscreteSeq& f) { return f.sum(); }

LossSummary summarize(std::vector<double> values, double truth) {
  if (values.empty()) throw std::invalid_argument("summarize: no values");
  LossSummary s;
  const double r = static_cast<double>(values.size());
  double acc = 0.0;
  for (double v : values) acc += v;
  s.mean = acc / r;
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.se = std::sqrt(sq / r);
  s.bias = s.mean - truth;
  s.rmsep = std::hypot(s.bias, s.se);
  s.values = std::move(values);
  return s;
}

}  // namespace kmono
