#pragma once

// Independent reference implementations for tests. Nothing here calls the
// library's basis or solver code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

/// Q̄ᵏⱼ(i) for j, i <= L by repeated tail sums of δⱼ (Q̄¹ⱼ = 1 on {0..j}).
inline Mat qbar_table(unsigned k, std::size_t L) {
  Mat cols(L + 1, Vec(L + 1, 0.0));
  for (std::size_t j = 0; j <= L; ++j) {
    Vec v(L + 1, 0.0);
    v[j] = 1.0;
    for (unsigned pass = 0; pass < k; ++pass) {
      double run = 0.0;
      for (std::size_t i = L + 1; i-- > 0;) {
        run += v[i];
        v[i] = run;
      }
    }
    cols[j] = v;
  }
  return cols;
}

/// Columns normalized to unit mass.
inline Mat q_table(unsigned k, std::size_t L) {
  Mat cols = qbar_table(k, L);
  for (auto& c : cols) {
    const double m = std::accumulate(c.begin(), c.end(), 0.0);
    for (double& v : c) v /= m;
  }
  return cols;
}

/// Euclidean projection onto {w >= 0, Σw = 1}.
inline Vec project_simplex(Vec w) {
  Vec u = w;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t r = 0; r < u.size(); ++r) {
    cum += u[r];
    const double t = (cum - 1.0) / static_cast<double>(r + 1);
    if (u[r] - t > 0.0) theta = t;
  }
  for (double& v : w) v = std::max(0.0, v - theta);
  return w;
}

inline Vec project_nonneg(Vec w) {
  for (double& v : w) v = std::max(0.0, v);
  return w;
}

struct QpResult {
  Vec weights;  // normalized basis, j = 0..L
  Vec fitted;   // i = 0..L
  double psi = 0.0;
  std::size_t iterations = 0;
};

/// min ‖Σⱼ wⱼ Qⱼ - target‖² over w >= 0 (and Σw = 1 when `simplex`),
/// knots {0..L}, by FISTA with gradient restart. `target` must be supported
/// on {0..L}.
inline QpResult nnls_fista(unsigned k, std::size_t L, const Vec& target, bool simplex,
                           std::size_t max_iter = 400000, double tol = 1e-15) {
  const Mat Q = q_table(k, L);
  const std::size_t n = L + 1;
  Vec tgt(n, 0.0);
  for (std::size_t i = 0; i < std::min(n, target.size()); ++i) tgt[i] = target[i];

  Mat G(n, Vec(n, 0.0));
  Vec b(n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < n; ++i) b[a] += Q[a][i] * tgt[i];
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t i = 0; i < n; ++i) G[a][c] += Q[a][i] * Q[c][i];
    }
  }
  // largest eigenvalue of G by power iteration
  Vec v(n, 1.0);
  double lmax = 0.0;
  for (int it = 0; it < 500; ++it) {
    Vec g(n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t c = 0; c < n; ++c) g[a] += G[a][c] * v[c];
    }
    const double norm = std::sqrt(std::inner_product(g.begin(), g.end(), g.begin(), 0.0));
    lmax = norm;
    for (std::size_t a = 0; a < n; ++a) v[a] = g[a] / norm;
  }
  const double step = 1.0 / (2.0 * lmax * 1.01);
  auto project = [&](Vec w) { return simplex ? project_simplex(std::move(w)) : project_nonneg(std::move(w)); };
  auto grad = [&](const Vec& w) {
    Vec g(n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      double s = -b[a];
      for (std::size_t c = 0; c < n; ++c) s += G[a][c] * w[c];
      g[a] = 2.0 * s;
    }
    return g;
  };

  Vec x(n, 0.0);
  x[L] = 1.0;
  Vec y = x;
  double t = 1.0;
  QpResult out;
  for (std::size_t it = 0; it < max_iter; ++it) {
    const Vec g = grad(y);
    Vec xn(n);
    for (std::size_t a = 0; a < n; ++a) xn[a] = y[a] - step * g[a];
    xn = project(std::move(xn));
    double move = 0.0, restart = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      move = std::max(move, std::abs(xn[a] - x[a]));
      restart += g[a] * (xn[a] - x[a]);
    }
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    if (restart > 0.0) {
      y = xn;
      t = 1.0;
    } else {
      for (std::size_t a = 0; a < n; ++a) y[a] = xn[a] + (t - 1.0) / tn * (xn[a] - x[a]);
      t = tn;
    }
    x = std::move(xn);
    out.iterations = it + 1;
    if (move < tol) break;
  }
  out.weights = x;
  out.fitted.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) out.fitted[i] += x[j] * Q[j][i];
  }
  for (std::size_t i = 0; i < n; ++i) out.psi += (out.fitted[i] - tgt[i]) * (out.fitted[i] - tgt[i]);
  return out;
}

/// (-1)^k Δ^k f on {0..horizon} by repeated differencing.
inline Vec signed_kdiff(const Vec& f, unsigned k, std::size_t horizon) {
  Vec d(std::max(f.size(), horizon + 1) + k + 1, 0.0);
  std::copy(f.begin(), f.end(), d.begin());
  for (unsigned r = 0; r < k; ++r) {
    for (std::size_t i = 0; i + 1 < d.size(); ++i) d[i] = d[i] - d[i + 1];
  }
  d.resize(horizon + 1);
  return d;
}

}  // namespace oracle
