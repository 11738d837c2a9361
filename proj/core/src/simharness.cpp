#include "kmono/simharness.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "kmono/distributions.hpp"
#include "kmono/empirical.hpp"

namespace kmono {

const char* to_string(Estimator e) noexcept {
  switch (e) {
    case Estimator::Probability: return "prob";
    case Estimator::Cone: return "seq";
    case Estimator::Empirical: return "empirical";
  }
  return "?";
}

Estimator parse_estimator(const std::string& name) {
  if (name == "prob") return Estimator::Probability;
  if (name == "seq") return Estimator::Cone;
  if (name == "empirical") return Estimator::Empirical;
  throw std::invalid_argument("unknown estimator '" + name +
                              "' (expected prob, seq or empirical)");
}

void SimConfig::validate() const {
  if (targets.empty()) throw std::invalid_argument("no targets");
  if (ns.empty()) throw std::invalid_argument("no sample sizes");
  if (modes.empty()) throw std::invalid_argument("no estimators");
  if (reps == 0) throw std::invalid_argument("reps must be >= 1");
  for (std::size_t n : ns) {
    if (n == 0) throw std::invalid_argument("sample sizes must be >= 1");
  }
  const bool needs_k = std::any_of(modes.begin(), modes.end(), [](Estimator e) {
    return e != Estimator::Empirical;
  });
  if (ks.empty()) throw std::invalid_argument("no k values");
  for (unsigned k : ks) {
    if (k == 0 && needs_k) throw std::invalid_argument("k must be >= 1");
  }
  for (const auto& t : targets) TargetDist::parse(t);
}

SimConfig default_grid(bool full) {
  SimConfig c;
  c.targets = {"spline:10:2", "spline:10:3", "spline:10:4", "spline:10:10",
               "poisson:0.3", "poisson:0.35", "poisson:0.45",
               "poisson:" + format_double(2.0 - std::sqrt(2.0)),
               "poisson:0.7", "poisson:1"};
  c.ns = {20, 50, 100, 250, 500, 1000};
  if (full) {
    c.ns.push_back(10000);
    c.ns.push_back(100000);
  }
  c.ks = {2, 3, 4};
  return c;
}

const std::vector<std::string>& loss_names() {
  static const std::vector<std::string> names{
      "l2", "hellinger", "tv", "entropy", "variance", "p0", "mass"};
  return names;
}

namespace {

constexpr std::size_t kLossCount = 7;
constexpr std::size_t kFirstFunctional = 3;

using Row = std::array<double, kLossCount>;

Row evaluate(const DiscreteSeq& truth, const DiscreteSeq& est) {
  return {l2_err(truth, est), hellinger_err(truth, est), tv_err(truth, est),
          entropy(est),       variance(est),             prob_at_zero(est),
          mass(est)};
}

Row truth_row(const DiscreteSeq& truth) {
  return {0.0, 0.0, 0.0, entropy(truth), variance(truth), prob_at_zero(truth),
          mass(truth)};
}

// One (k, estimator) column of a replication.
struct Outcome {
  Row values{};
  std::string error;
};

struct Cell {
  TargetDist dist;
  std::size_t n;
  // [rep][slot], slot = k index * modes + mode index
  std::vector<std::vector<Outcome>> reps;
};

Outcome fit_one(const TargetDist& dist, const ProbSeq& p_tilde, unsigned k,
                Estimator e, const FitOptions& opts) {
  Outcome o;
  try {
    if (e == Estimator::Empirical) {
      o.values = evaluate(dist.pmf.seq(), p_tilde.seq());
    } else {
      const Mode m = e == Estimator::Probability ? Mode::Probability : Mode::Cone;
      o.values = evaluate(dist.pmf.seq(), fit(p_tilde, k, m, opts).fitted);
    }
  } catch (const std::exception& ex) {
    o.error = ex.what();
  }
  return o;
}

void replicate(const SimConfig& c, std::size_t cell_index, Cell& cell,
               std::size_t rep) {
  Rng rng = Rng::derive(c.seed, cell_index, rep);
  const ProbSeq p_tilde = empirical_pmf(sample(cell.dist, cell.n, rng));
  auto& out = cell.reps[rep];
  out.resize(c.ks.size() * c.modes.size());
  std::optional<Outcome> empirical;
  for (std::size_t ki = 0; ki < c.ks.size(); ++ki) {
    for (std::size_t mi = 0; mi < c.modes.size(); ++mi) {
      const Estimator e = c.modes[mi];
      Outcome& slot = out[ki * c.modes.size() + mi];
      if (e == Estimator::Empirical) {
        if (!empirical) empirical = fit_one(cell.dist, p_tilde, 0, e, c.fit_options);
        slot = *empirical;
      } else {
        slot = fit_one(cell.dist, p_tilde, c.ks[ki], e, c.fit_options);
      }
    }
  }
}

void run_parallel(std::size_t tasks, unsigned threads,
                  const std::function<void(std::size_t)>& work) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks) return;
      try {
        work(t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(tasks);
        return;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

SimResult run_grid(const SimConfig& config) {
  config.validate();
  unsigned threads = config.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  std::vector<Cell> cells;
  for (const auto& spec : config.targets) {
    const TargetDist dist = TargetDist::parse(spec);
    for (std::size_t n : config.ns) {
      cells.push_back(Cell{dist, n, std::vector<std::vector<Outcome>>(config.reps)});
    }
  }

  const std::size_t reps = config.reps;
  run_parallel(cells.size() * reps, threads, [&](std::size_t task) {
    const std::size_t ci = task / reps;
    replicate(config, ci, cells[ci], task % reps);
  });

  SimResult result;
  const auto& names = loss_names();
  const std::size_t nm = config.modes.size();
  std::size_t ci = 0;
  for (const auto& spec : config.targets) {
    for (std::size_t n : config.ns) {
      const Cell& cell = cells[ci++];
      const Row truth = truth_row(cell.dist.pmf.seq());
      for (std::size_t ki = 0; ki < config.ks.size(); ++ki) {
        std::vector<SimRecord> block;
        std::optional<std::size_t> empirical_mode;
        for (std::size_t mi = 0; mi < nm; ++mi) {
          const std::size_t slot = ki * nm + mi;
          if (config.modes[mi] == Estimator::Empirical) empirical_mode = mi;
          std::string error;
          for (std::size_t r = 0; r < reps && error.empty(); ++r) {
            if (!cell.reps[r][slot].error.empty()) {
              error = "replication " + std::to_string(r) + ": " +
                      cell.reps[r][slot].error;
            }
          }
          if (!error.empty()) ++result.failed_cells;
          for (std::size_t li = 0; li < kLossCount; ++li) {
            SimRecord rec;
            rec.target = spec;
            rec.n = n;
            rec.k = config.ks[ki];
            rec.mode = config.modes[mi];
            rec.loss = names[li];
            rec.truth = truth[li];
            rec.error = error;
            if (error.empty()) {
              std::vector<double> values(reps);
              for (std::size_t r = 0; r < reps; ++r) {
                values[r] = cell.reps[r][slot].values[li];
              }
              rec.summary = summarize(std::move(values), truth[li]);
            }
            block.push_back(std::move(rec));
          }
        }
        if (empirical_mode) {
          const std::size_t base = *empirical_mode * kLossCount;
          for (std::size_t i = 0; i < block.size(); ++i) {
            const std::size_t li = i % kLossCount;
            const SimRecord& den = block[base + li];
            SimRecord& rec = block[i];
            if (!rec.error.empty() || !den.error.empty()) continue;
            const bool functional = li >= kFirstFunctional;
            const double num = functional ? rec.summary.rmsep : rec.summary.mean;
            const double d = functional ? den.summary.rmsep : den.summary.mean;
            if (d > 0.0) rec.ratio_vs_empirical = num / d;
          }
        }
        for (auto& rec : block) result.records.push_back(std::move(rec));
      }
    }
  }
  return result;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace

void emit_csv(const std::vector<SimRecord>& records, std::ostream& out) {
  out << "target,n,k,mode,loss,mean,se,bias,rmsep,ratio_vs_empirical\n";
  for (const auto& r : records) {
    out << r.target << ',' << r.n << ',' << r.k << ',' << to_string(r.mode) << ','
        << r.loss << ',';
    if (r.error.empty()) {
      out << format_double(r.summary.mean) << ',' << format_double(r.summary.se)
          << ',' << format_double(r.summary.bias) << ','
          << format_double(r.summary.rmsep) << ',';
      if (r.ratio_vs_empirical) out << format_double(*r.ratio_vs_empirical);
    } else {
      out << ",,,,";
    }
    out << '\n';
  }
}

void emit_csv(const std::vector<SimRecord>& records, const std::string& path) {
  auto out = open_output(path);
  emit_csv(records, out);
  finish_output(out, path);
}

void emit_plotdata(const std::vector<SimRecord>& records, std::ostream& out) {
  std::vector<const SimRecord*> rows;
  for (const auto& r : records) {
    if (r.mode != Estimator::Empirical && r.ratio_vs_empirical) rows.push_back(&r);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SimRecord* a, const SimRecord* b) {
    return std::tie(a->target, a->k, a->mode, a->loss, a->n) <
           std::tie(b->target, b->k, b->mode, b->loss, b->n);
  });
  out << "target,k,mode,loss,n,ratio\n";
  for (const SimRecord* r : rows) {
    out << r->target << ',' << r->k << ',' << to_string(r->mode) << ',' << r->loss
        << ',' << r->n << ',' << format_double(*r->ratio_vs_empirical) << '\n';
  }
}

void emit_plotdata(const std::vector<SimRecord>& records, const std::string& path) {
  auto out = open_output(path);
  emit_plotdata(records, out);
  finish_output(out, path);
}

}  // namespace kmono
