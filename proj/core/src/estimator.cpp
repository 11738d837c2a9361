#include "kmono/estimator.hpp"

#include <string>

namespace kmono {
namespace {

std::size_t next_level(std::size_t L, unsigned k) { return 2 * L + k; }

}  // namespace

std::size_t l_schedule(std::size_t s_tilde, unsigned k, std::size_t attempt,
                       std::size_t cap) {
  std::size_t L = s_tilde + 2 * static_cast<std::size_t>(k);
  for (std::size_t a = 0; a < attempt && L <= cap; ++a) L = next_level(L, k);
  if (L > cap) {
    throw std::length_error("truncation schedule exceeded the cap of " +
                            std::to_string(cap));
  }
  return L;
}

EstimateResult fit(const ProbSeq& p_tilde, unsigned k, Mode mode,
                   const FitOptions& options) {
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  const std::size_t s_tilde = p_tilde.smax();

  std::size_t L = options.initial_L ? std::max(*options.initial_L, s_tilde)
                                    : l_schedule(s_tilde, k, 0, options.max_L);
  StopReport last;
  std::size_t last_L = L;
  for (std::size_t attempt = 1;; ++attempt) {
    if (L > options.max_L) {
      throw CriterionError("stopping criterion not met up to the truncation cap",
                           last_L, last);
    }
    SolverConfig cfg;
    cfg.k = k;
    cfg.L = L;
    cfg.deriv_tol = options.deriv_tol;
    cfg.mode = mode;
    const SolverState state = run(cfg, p_tilde);

    EstimateResult res;
    res.mode = mode;
    res.k = k;
    res.mixture = state.mixture(k);
    res.fitted = DiscreteSeq(state.fitted);
    res.criterion = check(res.fitted, p_tilde, k, mode);
    if (res.criterion.passed) {
      res.knots = knots(res.fitted, k);
      res.beta = beta(res.fitted, p_tilde);
      res.shat = res.fitted.smax().value_or(0);
      res.L_used = L;
      res.iterations = state.outer_iterations;
      res.attempts = attempt;
      return res;
    }
    last = std::move(res.criterion);
    last_L = L;
    L = next_level(L, k);
  }
}

}  // namespace kmono
