#include "kmono/stopping.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kmono/spline.hpp"

namespace kmono {
namespace {

constexpr double kBetaTol = 1e-10;

// mʲ_l = (l+1)...(l+j)/j! in floating point, for tolerances at large l.
double mass_approx(unsigned j, double l) {
  double m = 1.0;
  for (unsigned t = 1; t <= j; ++t) m *= (l + t) / t;
  return m;
}

double gap_tol(unsigned k, std::size_t l) {
  return kGapTol * (1.0 + mass_approx(k, static_cast<double>(l)));
}

std::size_t tail_start(const DiscreteSeq& f, const ProbSeq& p_tilde) {
  return std::max(f.smax().value_or(0), p_tilde.smax());
}

// (x + a)(x + a + 1)...(x + a + n - 1) / n! as coefficients in x.
std::vector<double> rising_poly(unsigned n, double a) {
  std::vector<double> c{1.0};
  for (unsigned t = 0; t < n; ++t) {
    std::vector<double> next(c.size() + 1, 0.0);
    const double shift = a + t;
    for (std::size_t d = 0; d < c.size(); ++d) {
      next[d + 1] += c[d];
      next[d] += shift * c[d];
    }
    for (double& v : next) v /= (t + 1);
    c = std::move(next);
  }
  return c;
}

// F^j_{f - p̃}(0..horizon) for j = 1..k, indexed [j][l].
std::vector<std::vector<double>> diff_primitives(const DiscreteSeq& f,
                                                 const ProbSeq& p_tilde,
                                                 unsigned k,
                                                 std::size_t horizon) {
  std::vector<double> acc = (f - p_tilde.seq()).dense(horizon);
  std::vector<std::vector<double>> out(k + 1);
  for (unsigned j = 1; j <= k; ++j) {
    double run = 0.0;
    for (double& v : acc) {
      run += v;
      v = run;
    }
    out[j] = acc;
  }
  return out;
}

double resolve_beta(const DiscreteSeq& f, const ProbSeq& p_tilde, Mode mode) {
  return mode == Mode::Probability ? beta(f, p_tilde) : 0.0;
}

void fail(StopReport& r, std::size_t l, std::string reason) {
  if (!r.passed) return;
  r.passed = false;
  r.first_violation = l;
  r.reason = std::move(reason);
}

}  // namespace

double beta(const DiscreteSeq& f, const ProbSeq& p_tilde) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * (f[i] - p_tilde[i]);
  return s;
}

double characterization_gap(const DiscreteSeq& f, const ProbSeq& p_tilde,
                            unsigned k, std::size_t l, double beta_value) {
  const auto prim = diff_primitives(f, p_tilde, k, l);
  return prim[k][l] - beta_value * mass_approx(k, static_cast<double>(l));
}

double characterization_gap(const DiscreteSeq& f, const ProbSeq& p_tilde,
                            unsigned k, std::size_t l, Mode mode) {
  return characterization_gap(f, p_tilde, k, l, resolve_beta(f, p_tilde, mode));
}

double PolyBound::eval(std::size_t l) const {
  if (l < tau) throw std::domain_error("tail polynomial evaluated below tau");
  const double x = static_cast<double>(l - tau);
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

PolyBound poly_tail(const DiscreteSeq& f, const ProbSeq& p_tilde, unsigned k,
                    double beta_value) {
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  PolyBound pb;
  pb.tau = tail_start(f, p_tilde);
  pb.coeffs.assign(k + 1, 0.0);
  const double tau = static_cast<double>(pb.tau);

  const auto prim_d = diff_primitives(f, p_tilde, k, pb.tau);
  double scale = 0.0;

  // Σ_j ΔF^j(τ) Q̄^{k-j+1}_{l-1}(τ), with Q̄^{k-j+1}_{l-1}(τ) = x(x+1)...(x+k-j-1)/(k-j)!
  for (unsigned j = 1; j <= k; ++j) {
    const double delta = prim_d[j][pb.tau];
    const auto basis = rising_poly(k - j, 0.0);
    for (std::size_t d = 0; d < basis.size(); ++d) pb.coeffs[d] += delta * basis[d];
    // F^j_f(τ) + F^j_p̃(τ) bounds the rounding in delta
    const double magnitude = std::abs(primitive(f, j, pb.tau)) +
                             std::abs(primitive(p_tilde.seq(), j, pb.tau));
    scale = std::max(scale, magnitude);
  }
  // -β mᵏ_l with mᵏ_l = (l+1)...(l+k)/k! = (x+τ+1)...(x+τ+k)/k!
  if (beta_value != 0.0) {
    const auto m = rising_poly(k, tau + 1.0);
    for (std::size_t d = 0; d < m.size(); ++d) pb.coeffs[d] -= beta_value * m[d];
    scale = std::max(scale, std::abs(beta_value) * mass_approx(k, tau));
  }

  double cmax = 0.0;
  for (double c : pb.coeffs) cmax = std::max(cmax, std::abs(c));
  const double zero = std::max(1e-12 * cmax, 1e-12 * (1.0 + scale));
  for (unsigned d = k + 1; d-- > 0;) {
    if (std::abs(pb.coeffs[d]) > zero) {
      pb.degree = d;
      break;
    }
  }

  pb.M = tau + 1.0;
  if (pb.degree && *pb.degree > 0) {
    const unsigned d = *pb.degree;
    pb.leading = pb.coeffs[d];
    double ratio = 0.0;
    for (unsigned j = 0; j < d; ++j) {
      ratio = std::max(ratio, std::abs(pb.coeffs[j] / pb.leading));
    }
    pb.M = std::max(pb.M, tau + 1.0 + ratio);
  } else if (pb.degree) {
    pb.leading = pb.coeffs[0];
  }
  if (pb.M > kMaxCauchyBound) {
    pb.M = kMaxCauchyBound;
    pb.clamped = true;
  }
  return pb;
}

StopReport check_general(const DiscreteSeq& f, const ProbSeq& p_tilde,
                         unsigned k, Mode mode) {
  StopReport r;
  r.criterion = "general";
  r.passed = true;
  r.beta = resolve_beta(f, p_tilde, mode);

  const PolyBound pb = poly_tail(f, p_tilde, k, r.beta);
  r.tau = pb.tau;
  r.M = pb.M;
  r.M_clamped = pb.clamped;
  r.checked_up_to = static_cast<std::size_t>(std::floor(pb.M));

  if (pb.degree && !(pb.leading > 0.0)) {
    fail(r, pb.tau, "leading tail coefficient is not positive");
  }

  const auto prim = diff_primitives(f, p_tilde, k, pb.tau);
  auto gap = [&](std::size_t l) {
    if (l <= pb.tau) {
      return prim[k][l] - r.beta * mass_approx(k, static_cast<double>(l));
    }
    return pb.eval(l);
  };
  for (std::size_t l = 0; l <= r.checked_up_to; ++l) {
    if (gap(l) < -gap_tol(k, l)) {
      fail(r, l, "gap inequality violated");
      break;
    }
  }
  for (std::size_t l : knots(f, k)) {
    if (std::abs(gap(l)) > gap_tol(k, l)) {
      fail(r, l, "gap is not zero at a k-knot");
      break;
    }
  }
  if (pb.clamped && r.passed) {
    r.reason = "Cauchy bound clamped";
  }
  return r;
}

StopReport check_k34(const DiscreteSeq& f, const ProbSeq& p_tilde, unsigned k,
                     Mode mode) {
  if (k != 3 && k != 4) {
    throw std::invalid_argument("check_k34 requires k in {3, 4}");
  }
  StopReport r;
  r.criterion = "k34";
  r.passed = true;
  r.beta = resolve_beta(f, p_tilde, mode);
  r.tau = tail_start(f, p_tilde);
  const std::size_t last = r.tau + 1;
  r.checked_up_to = last;
  r.M = static_cast<double>(last);

  const auto prim = diff_primitives(f, p_tilde, k, last);
  auto gap = [&](std::size_t l) {
    return prim[k][l] - r.beta * mass_approx(k, static_cast<double>(l));
  };
  for (std::size_t l = 0; l <= last; ++l) {
    if (gap(l) < -gap_tol(k, l)) {
      fail(r, l, "gap inequality violated");
      break;
    }
  }
  for (std::size_t l : knots(f, k)) {
    if (std::abs(gap(l)) > gap_tol(k, l)) {
      fail(r, l, "gap is not zero at a k-knot");
      break;
    }
  }
  const unsigned first_order = mode == Mode::Probability ? 2 : 1;
  for (unsigned j = first_order; j < k; ++j) {
    const double mj = mass_approx(j, static_cast<double>(last));
    if (prim[j][last] - r.beta * mj < -kGapTol * (1.0 + mj)) {
      fail(r, last, "order-" + std::to_string(j) + " primitive condition violated");
      break;
    }
  }
  if (r.beta > kBetaTol) fail(r, last, "beta is positive");
  return r;
}

StopReport check(const DiscreteSeq& f, const ProbSeq& p_tilde, unsigned k,
                 Mode mode) {
  if (k == 3 || k == 4) return check_k34(f, p_tilde, k, mode);
  return check_general(f, p_tilde, k, mode);
}

double moment_gap(const DiscreteSeq& f, const ProbSeq& p_tilde, std::size_t a,
                  unsigned u, double beta_value) {
  double lhs = 0.0;
  double m = 0.0;
  for (std::size_t i = 0; i <= a; ++i) {
    const double w = std::pow(static_cast<double>(a - i), u);
    lhs += w * (f[i] - p_tilde[i]);
    m += w;
  }
  return lhs - beta_value * m;
}

}  // namespace kmono
