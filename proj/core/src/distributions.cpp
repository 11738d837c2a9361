#include "kmono/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "kmono/spline.hpp"

namespace kmono {

TargetDist TargetDist::spline(std::size_t j, unsigned ell) {
  if (ell == 0) throw std::invalid_argument("spline degree must be >= 1");
  TargetDist d;
  d.kind = Kind::Spline;
  d.ell = ell;
  d.j = j;
  d.pmf = ProbSeq::from(q_seq(ell, j));
  return d;
}

TargetDist TargetDist::poisson(double lambda) {
  TargetDist d;
  d.kind = Kind::Poisson;
  d.lambda = lambda;
  d.pmf = poisson_pmf(lambda);
  return d;
}

namespace {

template <typename T>
T parse_number(const std::string& s, const std::string& spec) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad number '" + s + "' in target '" + spec + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

}  // namespace

TargetDist TargetDist::parse(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts[0] == "spline" && parts.size() == 3) {
    return spline(parse_number<std::size_t>(parts[1], spec),
                  parse_number<unsigned>(parts[2], spec));
  }
  if (parts[0] == "poisson" && parts.size() == 2) {
    const double lambda = parse_number<double>(parts[1], spec);
    if (!(lambda > 0.0)) throw std::invalid_argument("Poisson rate must be positive");
    return poisson(lambda);
  }
  throw std::invalid_argument("unknown target '" + spec +
                              "' (expected spline:J:L or poisson:LAMBDA)");
}

std::string TargetDist::spec() const {
  if (kind == Kind::Spline) {
    return "spline:" + std::to_string(j) + ":" + std::to_string(ell);
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, lambda);
  return "poisson:" + std::string(buf, res.ptr);
}

namespace {

std::vector<double> threshold_poly(unsigned ell) {
  // (ℓ!)² / ((h!)² (ℓ-h)!) = ℓ! C(ℓ,h) / h!
  std::vector<double> c(ell + 1);
  double fact_l = 1.0;
  for (unsigned t = 2; t <= ell; ++t) fact_l *= t;
  for (unsigned h = 0; h <= ell; ++h) {
    double binom = 1.0, fact_h = 1.0;
    for (unsigned t = 1; t <= h; ++t) {
      binom = binom * (ell - h + t) / t;
      fact_h *= t;
    }
    const double v = fact_l * binom / fact_h;
    c[h] = (h % 2 == 0) ? v : -v;
  }
  return c;
}

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

double poisson_kmono_threshold(unsigned ell) {
  if (ell < 1 || ell > 10) throw std::invalid_argument("threshold needs 1 <= l <= 10");
  const auto c = threshold_poly(ell);
  // P(0) = ℓ! > 0; scan for the first sign change, then bisect.
  const double step = 1e-3;
  double lo = 0.0, hi = step;
  while (horner(c, hi) > 0.0) {
    lo = hi;
    hi += step;
    if (hi > 2.0) throw std::logic_error("no threshold root below 2");
  }
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (horner(c, mid) > 0.0 ? lo : hi) = mid;
  }
  // One Newton step from the bracket midpoint lands exactly on simple
  // rational roots such as λ₁ = 1.
  std::vector<double> dc(ell);
  for (unsigned h = 1; h <= ell; ++h) dc[h - 1] = h * c[h];
  const double mid = 0.5 * (lo + hi);
  const double polished = mid - horner(c, mid) / horner(dc, mid);
  if (polished >= lo - 1e-14 && polished <= hi + 1e-14 &&
      std::abs(horner(c, polished)) <= std::abs(horner(c, mid))) {
    return polished;
  }
  return mid;
}

bool is_poisson_kmonotone(double lambda, unsigned ell) {
  if (!(lambda > 0.0)) throw std::invalid_argument("Poisson rate must be positive");
  return lambda <= poisson_kmono_threshold(ell);
}

ProbSeq poisson_pmf(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("Poisson rate must be positive");
  std::vector<double> p;
  double term = std::exp(-lambda);
  double cum = 0.0;
  for (std::size_t i = 0;; ++i) {
    p.push_back(term);
    cum += term;
    const double next = term * lambda / static_cast<double>(i + 1);
    // geometric bound on the tail Σ_{m>i} p(m) once the ratio is below one
    const double ratio = lambda / static_cast<double>(i + 2);
    if (ratio < 1.0 && next / (1.0 - ratio) < kPoissonTailMass) break;
    term = next;
  }
  for (double& v : p) v /= cum;
  return ProbSeq::from(DiscreteSeq(std::move(p)));
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

Rng Rng::derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return Rng(splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

CountTable sample(const TargetDist& dist, std::size_t n, Rng& rng) {
  const auto values = dist.pmf.seq().values();
  std::vector<double> cdf(values.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) cdf[i] = (acc += values[i]);
  std::vector<std::uint64_t> tally(values.size(), 0);
  for (std::size_t s = 0; s < n; ++s) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++tally[static_cast<std::size_t>(it - cdf.begin())];
  }
  CountTable t;
  for (std::size_t i = 0; i < tally.size(); ++i) {
    if (tally[i] > 0) t.add(i, tally[i]);
  }
  return t;
}

CountTable sample(const TargetDist& dist, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return sample(dist, n, rng);
}

}  // namespace kmono
