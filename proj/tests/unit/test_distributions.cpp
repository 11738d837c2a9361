#include <doctest.h>

#include <cmath>

#include "kmono/distributions.hpp"
#include "kmono/spline.hpp"

using namespace kmono;
using Counts = std::map<std::uint64_t, std::uint64_t>;

TEST_CASE("Poisson thresholds") {
  CHECK(poisson_kmono_threshold(1) == 1.0);
  CHECK(std::abs(poisson_kmono_threshold(2) - (2.0 - std::sqrt(2.0))) <= 1e-12);
  // λ³ - 9λ² + 18λ - 6 = 0
  const double l3 = poisson_kmono_threshold(3);
  CHECK(std::abs(l3 * l3 * l3 - 9 * l3 * l3 + 18 * l3 - 6) <= 1e-11);
  CHECK(std::abs(l3 - 0.415) <= 1e-3);
  CHECK(std::abs(poisson_kmono_threshold(4) - 0.322) <= 1e-3);
  CHECK(std::abs(poisson_kmono_threshold(5) - 0.264) <= 1e-3);
  for (unsigned l = 2; l <= 10; ++l) {
    CHECK(poisson_kmono_threshold(l) < poisson_kmono_threshold(l - 1));
  }
  CHECK_THROWS_AS(poisson_kmono_threshold(0), std::invalid_argument);
  CHECK_THROWS_AS(poisson_kmono_threshold(11), std::invalid_argument);
}

TEST_CASE("Poisson monotony classification") {
  CHECK(is_poisson_kmonotone(0.35, 3));
  CHECK_FALSE(is_poisson_kmonotone(0.45, 3));
  CHECK(is_poisson_kmonotone(2.0 - std::sqrt(2.0), 2));
  CHECK_FALSE(is_poisson_kmonotone(1.0, 2));
  CHECK_THROWS_AS(is_poisson_kmonotone(0.0, 2), std::invalid_argument);
}

TEST_CASE("thresholds agree with monotony of the truncated pmf") {
  for (unsigned l = 1; l <= 5; ++l) {
    const double t = poisson_kmono_threshold(l);
    CHECK(is_kmonotone(poisson_pmf(t - 0.01).seq(), l, 0.0).monotone);
    CHECK_FALSE(is_kmonotone(poisson_pmf(t + 0.01).seq(), l, 0.0).monotone);
  }
}

TEST_CASE("Poisson pmf truncation") {
  const ProbSeq p = poisson_pmf(0.7);
  CHECK(std::abs(p.seq().sum() - 1.0) <= 1e-14);
  CHECK(p[0] == doctest::Approx(std::exp(-0.7)).epsilon(1e-13));
  CHECK(p.smax() < 30);
  const ProbSeq big = poisson_pmf(5.0);
  CHECK(big[5] == doctest::Approx(std::exp(-5.0) * 3125.0 / 120.0).epsilon(1e-13));
}

TEST_CASE("target specs") {
  const TargetDist s = TargetDist::parse("spline:10:3");
  CHECK(s.kind == TargetDist::Kind::Spline);
  CHECK(s.j == 10);
  CHECK(s.ell == 3);
  CHECK(max_abs_diff(s.pmf.seq(), q_seq(3, 10)) == 0.0);
  CHECK(s.spec() == "spline:10:3");

  const TargetDist p = TargetDist::parse("poisson:0.35");
  CHECK(p.kind == TargetDist::Kind::Poisson);
  CHECK(p.lambda == 0.35);
  CHECK(p.spec() == "poisson:0.35");

  CHECK_THROWS_AS(TargetDist::parse("spline:10"), std::invalid_argument);
  CHECK_THROWS_AS(TargetDist::parse("poisson:-1"), std::invalid_argument);
  CHECK_THROWS_AS(TargetDist::parse("poisson:abc"), std::invalid_argument);
  CHECK_THROWS_AS(TargetDist::parse("geometric:0.5"), std::invalid_argument);
  CHECK_THROWS_AS(TargetDist::parse("spline:10:0"), std::invalid_argument);
}

TEST_CASE("spline targets are monotone as expected") {
  for (unsigned l : {2u, 3u, 4u, 10u}) {
    const DiscreteSeq f = TargetDist::spline(10, l).pmf.seq();
    CHECK(is_kmonotone(f, l).monotone);
    CHECK(knots(f, l) == std::vector<std::size_t>{10});
    if (l >= 2) CHECK(is_strictly_kmonotone(f, l - 1));
  }
}

TEST_CASE("sampling") {
  TargetDist point;
  point.pmf = ProbSeq::from(DiscreteSeq({1.0}));
  CHECK(sample(point, 1, 1) == CountTable(Counts{{0, 1}}));

  const TargetDist d = TargetDist::spline(10, 2);
  CHECK(sample(d, 500, 42) == sample(d, 500, 42));
  CHECK_FALSE(sample(d, 500, 42) == sample(d, 500, 43));

  const ProbSeq p = empirical_pmf(sample(d, 1000000, 2024));
  CHECK(max_abs_diff(p.seq(), d.pmf.seq()) <= 5e-3);
}

TEST_CASE("derived streams are distinct and reproducible") {
  Rng a = Rng::derive(1, 2, 3);
  Rng b = Rng::derive(1, 2, 3);
  Rng c = Rng::derive(1, 3, 2);
  const auto x = a.next();
  CHECK(x == b.next());
  CHECK(x != c.next());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
