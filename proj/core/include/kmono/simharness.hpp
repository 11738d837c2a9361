#pragma once

// Monte Carlo grid over (target, n, k, estimator). Every replication draws
// one sample from its own stream derived from (seed, cell, replication) and
// fits all requested estimators on it, so results do not depend on the
// number of worker threads.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kmono/estimator.hpp"
#include "kmono/metrics.hpp"

namespace kmono {

enum class Estimator { Probability, Cone, Empirical };

const char* to_string(Estimator e) noexcept;
/// "prob", "seq" or "empirical".
Estimator parse_estimator(const std::string& name);

struct SimConfig {
  std::vector<std::string> targets;  // TargetDist spec strings
  std::vector<std::size_t> ns;
  std::vector<unsigned> ks;
  std::vector<Estimator> modes{Estimator::Probability, Estimator::Cone,
                               Estimator::Empirical};
  std::size_t reps = 1000;
  std::uint64_t seed = 0;
  /// 0 uses std::thread::hardware_concurrency().
  unsigned threads = 1;
  FitOptions fit_options;

  /// Throws std::invalid_argument on empty lists, reps == 0, n == 0, k == 0
  /// or an unparsable target.
  void validate() const;
};

/// Desk-scale grid; `full` adds n = 1e4 and 1e5.
SimConfig default_grid(bool full = false);

/// Loss names in output order. The first three compare to the truth (truth
/// value 0); the rest are functionals compared to their value at the truth.
const std::vector<std::string>& loss_names();

struct SimRecord {
  std::string target;
  std::size_t n = 0;
  unsigned k = 0;
  Estimator mode = Estimator::Empirical;
  std::string loss;
  LossSummary summary;
  double truth = 0.0;
  /// mean ratio for losses, RMSEP ratio for functionals; empty when the
  /// empirical denominator is zero or the empirical estimator was not run.
  std::optional<double> ratio_vs_empirical;
  /// Non-empty when a fit failed in this cell; the summary is then empty.
  std::string error;
};

struct SimResult {
  std::vector<SimRecord> records;
  std::size_t failed_cells = 0;
  bool ok() const noexcept { return failed_cells == 0; }
};

SimResult run_grid(const SimConfig& config);

/// `target,n,k,mode,loss,mean,se,bias,rmsep,ratio_vs_empirical`.
/// Failed cells are written with empty numeric fields.
void emit_csv(const std::vector<SimRecord>& records, std::ostream& out);
void emit_csv(const std::vector<SimRecord>& records, const std::string& path);

/// `target,k,mode,loss,n,ratio`: ratio-vs-n series for the constrained
/// estimators, sorted by (target, k, mode, loss, n).
void emit_plotdata(const std::vector<SimRecord>& records, std::ostream& out);
void emit_plotdata(const std::vector<SimRecord>& records, const std::string& path);

/// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace kmono
