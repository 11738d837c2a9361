#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "kmono/sra.hpp"
#include "oracles.hpp"

using namespace kmono;

namespace {

const ProbSeq kDelta1 = ProbSeq::from(DiscreteSeq({0.0, 1.0}));
const std::vector<double> kProj{91, 66, 45, 28, 15, 6, 1};

SolverConfig config(unsigned k, std::size_t L, Mode mode) {
  SolverConfig c;
  c.k = k;
  c.L = L;
  c.mode = mode;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS(SraSolver(config(0, 5, Mode::Cone), kDelta1), std::invalid_argument);
  CHECK_THROWS_AS(SraSolver(config(2, 0, Mode::Cone), kDelta1), std::invalid_argument);
  SolverConfig c = config(2, 5, Mode::Cone);
  c.deriv_tol = 0.0;
  CHECK_THROWS_AS(SraSolver(c, kDelta1), std::invalid_argument);
}

TEST_CASE("psi examples") {
  const ProbSeq p = ProbSeq::from(q_seq(3, 6));
  CHECK(psi(decompose(p.seq(), 3), p) == doctest::Approx(0.0).scale(1.0).epsilon(1e-24));
  CHECK(psi(SplineMixture{3, {{6, 1.0}}}, p) <= 1e-30);

  SplineMixture mix{3, {{5, 3.0 * 56 / 238}, {6, 84.0 / 238}}};
  double expected = 0.0;
  for (double v : kProj) expected += (v / 238) * (v / 238);
  expected += 1.0 - 2.0 * 66.0 / 238;
  CHECK(psi(mix, kDelta1) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("solve_on_support examples") {
  const ProbSeq p = ProbSeq::from(q_seq(3, 6));
  const SraSolver prob(config(3, 9, Mode::Probability), p);
  const SupportSolution one = prob.solve_on_support({6});
  CHECK(one.weights[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(one.lambda) <= 1e-13);
  CHECK(prob.solve_on_support({9}).weights[0] == doctest::Approx(1.0).epsilon(1e-13));

  const SraSolver cone(config(3, 9, Mode::Cone), kDelta1);
  const SupportSolution two = cone.solve_on_support({5, 6});
  CHECK(two.weights[0] / mass(3, 5) == doctest::Approx(3.0 / 238).epsilon(1e-12));
  CHECK(two.weights[1] / mass(3, 6) == doctest::Approx(1.0 / 238).epsilon(1e-12));
  CHECK_THROWS_AS(cone.solve_on_support({}), SolverError);
}

TEST_CASE("delta1 worked example in cone mode") {
  for (std::size_t L : {7, 9, 15, 40}) {
    const SolverState s = run(config(3, L, Mode::Cone), kDelta1);
    for (std::size_t i = 0; i < kProj.size(); ++i) {
      CHECK(s.fitted[i] == doctest::Approx(kProj[i] / 238).epsilon(1e-12));
    }
    for (std::size_t i = kProj.size(); i <= L; ++i) CHECK(std::abs(s.fitted[i]) <= 1e-14);
    CHECK(s.support == std::vector<std::size_t>{5, 6});
  }
}

TEST_CASE("feasible targets are reproduced") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    const unsigned k = 1 + rep % 4;
    const DiscreteSeq f = compose(testutil::random_mixture(rng, k, 10, 3));
    const ProbSeq p = ProbSeq::from(f, 1e-12);
    for (Mode mode : {Mode::Probability, Mode::Cone}) {
      const SolverState s = run(config(k, 14, mode), p);
      CHECK(s.psi <= 1e-24);
      CHECK(max_abs_diff(DiscreteSeq(s.fitted), f) <= 1e-12);
    }
  }
}

TEST_CASE("derivatives vanish at an exact fit") {
  const ProbSeq p = ProbSeq::from(q_seq(2, 4));
  for (Mode mode : {Mode::Probability, Mode::Cone}) {
    const SraSolver solver(config(2, 8, mode), p);
    const SolverState s = solver.make_state({4}, {1.0});
    for (double d : solver.dir_derivs(s)) CHECK(std::abs(d) <= 1e-15);
    CHECK_THROWS_AS(solver.dir_deriv(s, 9), std::out_of_range);
  }
}

TEST_CASE("directional derivatives match the defining sums") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 10; ++rep) {
    const unsigned k = 2 + rep % 3;
    const ProbSeq p = testutil::random_empirical(rng, 6, 30);
    const std::size_t L = 12;
    const auto Q = oracle::q_table(k, L);
    for (Mode mode : {Mode::Probability, Mode::Cone}) {
      const SraSolver solver(config(k, L, mode), p);
      const SolverState s = solver.make_state({3, 8, 12}, {0.2, 0.5, 0.3});
      const auto d = solver.dir_derivs(s);
      for (std::size_t j = 0; j <= L; ++j) {
        double ref = 0.0;
        for (std::size_t i = 0; i <= L; ++i) {
          const double r = s.fitted[i] - p[i];
          ref += mode == Mode::Probability ? 2.0 * (Q[j][i] - s.fitted[i]) * r
                                           : 2.0 * Q[j][i] * r;
        }
        CHECK(d[j] == doctest::Approx(ref).epsilon(1e-11).scale(1.0));
      }
      // derivative toward a probability direction is the μ-combination
      std::vector<double> mu(L + 1);
      double total = 0.0;
      for (double& m : mu) total += (m = std::uniform_real_distribution<double>(0, 1)(rng));
      double combo = 0.0, direct = 0.0;
      for (std::size_t j = 0; j <= L; ++j) {
        mu[j] /= total;
        combo += mu[j] * d[j];
      }
      for (std::size_t i = 0; i <= L; ++i) {
        double mui = 0.0;
        for (std::size_t j = 0; j <= L; ++j) mui += mu[j] * Q[j][i];
        const double r = s.fitted[i] - p[i];
        direct += mode == Mode::Probability ? 2.0 * (mui - s.fitted[i]) * r
                                            : 2.0 * mui * r;
      }
      CHECK(combo == doctest::Approx(direct).epsilon(1e-11).scale(1.0));
    }
  }
}

TEST_CASE("runs are KKT points with strictly decreasing psi") {
  std::mt19937_64 rng(53);
  for (int rep = 0; rep < 60; ++rep) {
    const unsigned k = 1 + rep % 5;
    const ProbSeq p = testutil::random_empirical(rng, 3 + rep % 8, 20 + rep);
    const std::size_t L = p.smax() + 2 * k + rep % 4;
    for (Mode mode : {Mode::Probability, Mode::Cone}) {
      const SraSolver solver(config(k, L, mode), p);
      const SolverState s = solver.run();
      for (std::size_t t = 1; t < s.psi_trace.size(); ++t) {
        CHECK(s.psi_trace[t] < s.psi_trace[t - 1]);
      }
      for (double w : s.weights) CHECK(w > 0.0);
      const auto d = solver.dir_derivs(s);
      const double tol = 1e-10 * std::max(1.0, s.psi);
      CHECK(*std::min_element(d.begin(), d.end()) >= -tol);
      for (std::size_t j : s.support) CHECK(std::abs(d[j]) <= 1e-9);
      const DiscreteSeq f(s.fitted);
      if (mode == Mode::Probability) {
        CHECK(std::abs(f.sum() - 1.0) <= 1e-12);
      } else {
        CHECK(std::abs(dot(f, f - p.seq())) <= 1e-10);
      }
      CHECK(is_kmonotone(f, k).monotone);
    }
  }
}

TEST_CASE("truncated solution matches the QP oracle") {
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 12; ++rep) {
    const unsigned k = 2 + rep % 3;
    const ProbSeq p = testutil::random_empirical(rng, 4 + rep % 4, 25);
    const std::size_t L = 12;
    for (Mode mode : {Mode::Probability, Mode::Cone}) {
      const SolverState s = run(config(k, L, mode), p);
      const auto ref = oracle::nnls_fista(k, L, p.seq().dense(L), mode == Mode::Probability);
      for (std::size_t i = 0; i <= L; ++i) {
        CHECK(std::abs(s.fitted[i] - ref.fitted[i]) <= 1e-6);
      }
      CHECK(s.psi <= ref.psi + 1e-12);
    }
  }
}

TEST_CASE("k = 2 modes agree on delta1") {
  const SolverState a = run(config(2, 20, Mode::Probability), kDelta1);
  const SolverState b = run(config(2, 20, Mode::Cone), kDelta1);
  CHECK(max_abs_diff(DiscreteSeq(a.fitted), DiscreteSeq(b.fitted)) <= 1e-12);
}

TEST_CASE("iteration cap is reported") {
  SolverConfig c = config(3, 30, Mode::Cone);
  c.max_outer_iters = 1;
  CHECK_THROWS_AS(run(c, kDelta1), SolverError);
}
