#pragma once

// Target distributions for simulation: normalized splines Qʲ_ℓ and Poisson
// pmfs, with seeded inverse-CDF sampling.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kmono/empirical.hpp"
#include "kmono/seq.hpp"

namespace kmono {

/// Poisson pmfs are cut where the remaining tail mass drops below this.
inline constexpr double kPoissonTailMass = 1e-14;

struct TargetDist {
  enum class Kind { Spline, Poisson };

  Kind kind = Kind::Spline;
  unsigned ell = 1;     // spline degree parameter
  std::size_t j = 0;    // spline support end
  double lambda = 0.0;  // Poisson rate
  ProbSeq pmf = ProbSeq::from(DiscreteSeq({1.0}));

  static TargetDist spline(std::size_t j, unsigned ell);
  static TargetDist poisson(double lambda);

  /// Accepts `spline:J:L` and `poisson:LAMBDA`.
  static TargetDist parse(const std::string& spec);
  std::string spec() const;
};

/// Smallest positive root of Σ_{h=0}^{ℓ} (-1)^h (ℓ!)² / ((h!)² (ℓ-h)!) λ^h,
/// the largest rate at which Poisson(λ) is ℓ-monotone. 1 <= ℓ <= 10.
double poisson_kmono_threshold(unsigned ell);

bool is_poisson_kmonotone(double lambda, unsigned ell);

/// Poisson(λ) truncated at tail mass kPoissonTailMass and renormalized.
ProbSeq poisson_pmf(double lambda);

/// Deterministic 64-bit generator with derivable substreams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  /// Independent stream for (seed, a, b), e.g. (seed, cell, replication).
  static Rng derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// n i.i.d. draws by inverse-CDF lookup on the pmf.
CountTable sample(const TargetDist& dist, std::size_t n, Rng& rng);
CountTable sample(const TargetDist& dist, std::size_t n, std::uint64_t seed);

}  // namespace kmono
