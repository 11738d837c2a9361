#include "kmono/spline.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace kmono {

u128 qbar_exact(unsigned k, std::size_t j, std::size_t i) {
  if (k == 0) throw std::invalid_argument("spline degree k must be >= 1");
  if (i > j) return 0;
  return binomial(j - i + k - 1, k - 1);
}

double qbar(unsigned k, std::size_t j, std::size_t i) {
  return to_double(qbar_exact(k, j, i));
}

u128 mass_exact(unsigned k, std::size_t j) {
  if (k == 0) throw std::invalid_argument("spline degree k must be >= 1");
  return binomial(j + k, k);
}

double mass(unsigned k, std::size_t j) { return to_double(mass_exact(k, j)); }

double q(unsigned k, std::size_t j, std::size_t i) {
  return qbar(k, j, i) / mass(k, j);
}

DiscreteSeq qbar_seq(unsigned k, std::size_t j) {
  std::vector<double> v(j + 1);
  for (std::size_t i = 0; i <= j; ++i) v[i] = qbar(k, j, i);
  return DiscreteSeq(std::move(v));
}

DiscreteSeq q_seq(unsigned k, std::size_t j) {
  const double m = mass(k, j);
  std::vector<double> v(j + 1);
  for (std::size_t i = 0; i <= j; ++i) v[i] = qbar(k, j, i) / m;
  return DiscreteSeq(std::move(v));
}

double SplineMixture::total() const noexcept {
  return std::accumulate(weights.begin(), weights.end(), 0.0,
                         [](double s, const auto& kv) { return s + kv.second; });
}

std::size_t SplineMixture::max_knot() const {
  if (weights.empty()) throw std::logic_error("empty mixture has no knots");
  return weights.rbegin()->first;
}

std::map<std::size_t, double> SplineMixture::unnormalized() const {
  std::map<std::size_t, double> out;
  for (const auto& [j, w] : weights) out[j] = w / mass(k, j);
  return out;
}

SplineMixture decompose(const DiscreteSeq& f, unsigned k, double drop,
                        double tol) {
  const DiscreteSeq d = diff(f, k);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  SplineMixture mix{k, {}};
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double s = sign * d[j];
    if (s < -tol) {
      throw std::invalid_argument("sequence is not " + std::to_string(k) +
                                  "-monotone at index " + std::to_string(j));
    }
    const double w = s * mass(k, j);
    if (w > drop) mix.weights[j] = w;
  }
  return mix;
}

DiscreteSeq compose(const SplineMixture& mix) {
  if (mix.weights.empty()) return {};
  std::vector<double> out(mix.max_knot() + 1, 0.0);
  for (const auto& [j, w] : mix.weights) {
    const double scale = w / mass(mix.k, j);
    for (std::size_t i = 0; i <= j; ++i) out[i] += scale * qbar(mix.k, j, i);
  }
  return DiscreteSeq(std::move(out));
}

}  // namespace kmono
