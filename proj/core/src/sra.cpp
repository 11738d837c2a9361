#include "kmono/sra.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace kmono {

const char* to_string(Mode m) noexcept {
  return m == Mode::Probability ? "prob" : "seq";
}

SplineMixture SolverState::mixture(unsigned k) const {
  SplineMixture mix{k, {}};
  for (std::size_t r = 0; r < support.size(); ++r) {
    if (weights[r] > 0.0) mix.weights[support[r]] = weights[r];
  }
  return mix;
}

double psi(const SplineMixture& mix, const ProbSeq& p_tilde) {
  return distance_sq(compose(mix), p_tilde.seq());
}

SraSolver::SraSolver(SolverConfig config, const ProbSeq& p_tilde)
    : config_(config) {
  if (config_.k == 0) throw std::invalid_argument("k must be >= 1");
  if (!(config_.deriv_tol > 0.0)) {
    throw std::invalid_argument("deriv_tol must be positive");
  }
  if (config_.L < p_tilde.smax()) {
    throw std::invalid_argument("truncation level L=" + std::to_string(config_.L) +
                                " is below the empirical support end " +
                                std::to_string(p_tilde.smax()));
  }
  if (config_.max_outer_iters == 0) config_.max_outer_iters = 10 * (config_.L + 1);

  const std::size_t L = config_.L;
  const unsigned k = config_.k;
  target_ = p_tilde.seq().dense(L);
  coeff_.resize(L + 1);
  mass_.resize(L + 1);
  for (std::size_t t = 0; t <= L; ++t) {
    coeff_[t] = qbar(k, t, 0);
    mass_[t] = mass(k, t);
  }
  // ⟨Q̄ⱼ, p̃⟩ = F^k_p̃(j)
  target_proj_ = primitives(p_tilde.seq(), k, L);
  for (std::size_t j = 0; j <= L; ++j) target_proj_[j] /= mass_[j];
}

SupportSolution SraSolver::solve_on_support(
    const std::vector<std::size_t>& support) const {
  if (support.empty()) throw SolverError("solve_on_support: empty support");
  const auto n = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXd gram(n, n);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const std::size_t a = support[r];
    rhs(r) = target_proj_[a];
    for (Eigen::Index c = r; c < n; ++c) {
      const std::size_t b = support[c];
      const std::size_t top = std::min(a, b);
      double s = 0.0;
      for (std::size_t i = 0; i <= top; ++i) s += coeff_[a - i] * coeff_[b - i];
      gram(r, c) = gram(c, r) = s / (mass_[a] * mass_[b]);
    }
  }

  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success ||
      llt.rcond() < std::numeric_limits<double>::epsilon()) {
    throw SolverError("Gram matrix is numerically singular on a support of size " +
                      std::to_string(support.size()));
  }
  auto solve = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd x = llt.solve(v);
    for (int it = 0; it < 2; ++it) x += llt.solve(v - gram * x);
    return x;
  };

  SupportSolution out;
  Eigen::VectorXd w;
  if (config_.mode == Mode::Cone) {
    w = solve(rhs);
  } else {
    // Stationarity G w + λ 1 = b with 1ᵀw = 1 (columns of Q sum to one).
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    const Eigen::VectorXd y = solve(ones);
    const double denom = y.sum();
    const Eigen::VectorXd x = solve(rhs);
    double lambda = (x.sum() - 1.0) / denom;
    w = x - lambda * y;
    for (int it = 0; it < 2; ++it) {
      const Eigen::VectorXd r1 = rhs - lambda * ones - gram * w;
      const double r2 = 1.0 - w.sum();
      const Eigen::VectorXd dx = solve(r1);
      const double dlambda = (dx.sum() - r2) / denom;
      w += dx - dlambda * y;
      lambda += dlambda;
    }
    out.lambda = lambda;
  }
  out.weights.assign(w.data(), w.data() + n);
  return out;
}

SolverState SraSolver::make_state(std::vector<std::size_t> support,
                                  std::vector<double> weights) const {
  SolverState s;
  s.support = std::move(support);
  s.weights = std::move(weights);
  s.fitted.assign(config_.L + 1, 0.0);
  for (std::size_t r = 0; r < s.support.size(); ++r) {
    const std::size_t j = s.support[r];
    const double scale = s.weights[r] / mass_[j];
    for (std::size_t i = 0; i <= j; ++i) s.fitted[i] += scale * coeff_[j - i];
  }
  double acc = 0.0;
  for (std::size_t i = 0; i <= config_.L; ++i) {
    const double d = s.fitted[i] - target_[i];
    acc += d * d;
  }
  s.psi = acc;
  return s;
}

std::vector<double> SraSolver::dir_derivs(const SolverState& state) const {
  const std::size_t L = config_.L;
  std::vector<double> resid(L + 1);
  double fitted_dot_resid = 0.0;
  for (std::size_t i = 0; i <= L; ++i) {
    resid[i] = state.fitted[i] - target_[i];
    fitted_dot_resid += state.fitted[i] * resid[i];
  }
  // ⟨Q̄ⱼ, r⟩ = F^k_r(j)
  for (unsigned pass = 0; pass < config_.k; ++pass) {
    std::partial_sum(resid.begin(), resid.end(), resid.begin());
  }
  std::vector<double> d(L + 1);
  for (std::size_t j = 0; j <= L; ++j) {
    d[j] = 2.0 * resid[j] / mass_[j];
    if (config_.mode == Mode::Probability) d[j] -= 2.0 * fitted_dot_resid;
  }
  return d;
}

double SraSolver::dir_deriv(const SolverState& state, std::size_t j) const {
  if (j > config_.L) throw std::out_of_range("dir_deriv: index beyond L");
  return dir_derivs(state)[j];
}

SolverState SraSolver::run() const {
  const SupportSolution init = solve_on_support({config_.L});
  SolverState state = make_state({config_.L}, init.weights);
  state.lambda = init.lambda;
  std::vector<double> trace{state.psi};

  std::size_t removals = 0;
  std::size_t iterations = 0;
  for (std::size_t iter = 0;; ++iter) {
    // Step 1: steepest descent direction among knots outside the support.
    const std::vector<double> d = dir_derivs(state);
    const double threshold = -config_.deriv_tol * std::max(1.0, state.psi);
    std::size_t chosen = d.size();
    double best = threshold;
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (d[j] < best &&
          !std::binary_search(state.support.begin(), state.support.end(), j)) {
        best = d[j];
        chosen = j;
      }
    }
    if (chosen == d.size()) {
      iterations = iter;
      break;
    }
    if (iter >= config_.max_outer_iters) {
      throw SolverError("support reduction did not converge within " +
                        std::to_string(config_.max_outer_iters) +
                        " iterations (k=" + std::to_string(config_.k) +
                        ", L=" + std::to_string(config_.L) + ")");
    }

    // Step 2: augment, re-solve, and reduce while some weight is negative.
    std::vector<std::size_t> cand = state.support;
    std::vector<double> anchor = state.weights;
    const auto pos = std::lower_bound(cand.begin(), cand.end(), chosen);
    anchor.insert(anchor.begin() + (pos - cand.begin()), 0.0);
    cand.insert(pos, chosen);

    for (;;) {
      SupportSolution sol = solve_on_support(cand);
      const bool feasible = std::all_of(sol.weights.begin(), sol.weights.end(),
                                        [](double w) { return w >= 0.0; });
      if (feasible) {
        const double lambda = sol.lambda;
        // exact zeros (ties, e.g. k = 1) carry no mass and would stall ε at 0
        std::vector<std::size_t> kept;
        std::vector<double> kept_w;
        for (std::size_t r = 0; r < cand.size(); ++r) {
          if (sol.weights[r] > 0.0) {
            kept.push_back(cand[r]);
            kept_w.push_back(sol.weights[r]);
          }
        }
        if (kept.empty()) throw SolverError("support reduction emptied the support");
        removals += cand.size() - kept.size();
        cand = std::move(kept);
        sol.weights = std::move(kept_w);
        state = make_state(std::move(cand), std::move(sol.weights));
        state.lambda = lambda;
        break;
      }
      // Move toward the new solution until the first coordinate hits zero.
      double eps = std::numeric_limits<double>::infinity();
      std::size_t drop = cand.size();
      for (std::size_t r = 0; r < cand.size(); ++r) {
        if (sol.weights[r] < anchor[r]) {
          const double e = anchor[r] / (anchor[r] - sol.weights[r]);
          if (e < eps) {
            eps = e;
            drop = r;
          }
        }
      }
      std::vector<std::size_t> next_cand;
      std::vector<double> next_anchor;
      for (std::size_t r = 0; r < cand.size(); ++r) {
        const double a = anchor[r] + eps * (sol.weights[r] - anchor[r]);
        if (r == drop || a <= 0.0) {
          ++removals;
          continue;
        }
        next_cand.push_back(cand[r]);
        next_anchor.push_back(a);
      }
      if (next_cand.empty()) {
        throw SolverError("support reduction emptied the support");
      }
      cand = std::move(next_cand);
      anchor = std::move(next_anchor);
    }
    trace.push_back(state.psi);
  }

  // A knot admitted with a derivative just past the threshold can end with a
  // weight at rounding level; it only inflates the support, so re-solve
  // without it when that keeps the fit feasible.
  const double total = std::accumulate(state.weights.begin(), state.weights.end(), 0.0);
  std::vector<std::size_t> reduced;
  for (std::size_t r = 0; r < state.support.size(); ++r) {
    if (state.weights[r] >= kDropThreshold * std::max(1.0, total)) {
      reduced.push_back(state.support[r]);
    }
  }
  if (!reduced.empty() && reduced.size() < state.support.size()) {
    SupportSolution sol = solve_on_support(reduced);
    if (std::all_of(sol.weights.begin(), sol.weights.end(),
                    [](double w) { return w > 0.0; })) {
      SolverState polished = make_state(std::move(reduced), std::move(sol.weights));
      if (polished.psi <= state.psi + 1e-14 * std::max(1.0, state.psi)) {
        removals += state.support.size() - polished.support.size();
        polished.lambda = sol.lambda;
        state = std::move(polished);
      }
    }
  }

  state.psi_trace = std::move(trace);
  state.outer_iterations = iterations;
  state.removals = removals;
  return state;
}

SolverState run(const SolverConfig& config, const ProbSeq& p_tilde) {
  return SraSolver(config, p_tilde).run();
}

}  // namespace kmono
