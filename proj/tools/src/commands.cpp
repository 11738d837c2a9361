#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "kmono/binomial.hpp"
#include "kmono/distributions.hpp"
#include "kmono/empirical.hpp"
#include "kmono/estimator.hpp"
#include "kmono/simharness.hpp"
#include "kmono/spline.hpp"

namespace kmono::cli {
namespace {

using nlohmann::json;

Mode parse_mode(const std::string& s) {
  if (s == "prob") return Mode::Probability;
  if (s == "seq") return Mode::Cone;
  throw std::invalid_argument("unknown mode '" + s + "' (expected prob or seq)");
}

InputFormat parse_format(const std::string& s) {
  if (s == "counts") return InputFormat::Counts;
  if (s == "samples") return InputFormat::Samples;
  throw std::invalid_argument("unknown format '" + s + "'");
}

std::string u128_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

json criterion_json(const StopReport& r) {
  json j{{"name", r.criterion},
         {"passed", r.passed},
         {"beta", r.beta},
         {"tau", r.tau},
         {"checked_up_to", r.checked_up_to},
         {"M", r.M},
         {"M_clamped", r.M_clamped}};
  j["first_violation"] = r.first_violation ? json(*r.first_violation) : json(nullptr);
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

json result_json(const EstimateResult& r, std::uint64_t n) {
  json mixture = json::object();
  for (const auto& [j, w] : r.mixture.weights) mixture[std::to_string(j)] = w;
  const auto v = r.fitted.values();
  return json{{"mode", to_string(r.mode)},
              {"k", r.k},
              {"n", n},
              {"L_used", r.L_used},
              {"p_hat", std::vector<double>(v.begin(), v.end())},
              {"mixture", std::move(mixture)},
              {"knots", r.knots},
              {"beta", r.beta},
              {"criterion", criterion_json(r.criterion)},
              {"mass", r.fitted.sum()},
              {"shat", r.shat},
              {"iterations", r.iterations}};
}

std::string summary_line(const EstimateResult& r) {
  std::ostringstream s;
  s << "k=" << r.k << " mode=" << to_string(r.mode) << " shat=" << r.shat
    << " beta=" << format_double(r.beta) << " L_used=" << r.L_used
    << " criterion=" << r.criterion.criterion << ' '
    << (r.criterion.passed ? "pass" : "fail");
  return s.str();
}

// Reading errors carry the path; returns nullopt after reporting.
std::optional<CountTable> load_counts(const std::string& path, InputFormat format,
                                      std::ostream& err) {
  try {
    return read_counts_file(path, format);
  } catch (const ParseError& e) {
    err << "error: " << path << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return std::nullopt;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  f << text;
  f.flush();
  if (!f) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

DiscreteSeq read_values(std::istream& in) {
  std::vector<double> values;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view row(raw);
    if (line == 1 && row.substr(0, 3) == "\xEF\xBB\xBF") row.remove_prefix(3);
    while (!row.empty() && (row.back() == '\r' || row.back() == ' ' || row.back() == '\t')) {
      row.remove_suffix(1);
    }
    while (!row.empty() && (row.front() == ' ' || row.front() == '\t')) {
      row.remove_prefix(1);
    }
    if (row.empty()) continue;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(row.data(), row.data() + row.size(), v);
    if (ec != std::errc{} || ptr != row.data() + row.size() || !std::isfinite(v)) {
      throw ParseError(line, "expected a real number, got '" + std::string(row) + "'");
    }
    if (v < 0.0) throw ParseError(line, "negative value");
    values.push_back(v);
  }
  if (values.empty()) throw ParseError(line, "no values");
  return DiscreteSeq(std::move(values));
}

int cmd_fit(const FitArgs& args, std::ostream& out, std::ostream& err) {
  Mode mode;
  InputFormat format;
  try {
    mode = parse_mode(args.mode);
    format = parse_format(args.format);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
  const auto table = load_counts(args.input, format, err);
  if (!table) return kParseError;

  FitOptions opts;
  opts.deriv_tol = args.tol;
  EstimateResult res;
  try {
    res = fit(empirical_pmf(*table), args.k, mode, opts);
  } catch (const CriterionError& e) {
    err << "error: " << e.what() << " (last L=" << e.last_L() << ")\n"
        << criterion_json(e.report()).dump(2) << '\n';
    return kCriterionFailure;
  } catch (const std::exception& e) {
    err << "error: fit failed: " << e.what() << '\n';
    return kCriterionFailure;
  }

  const std::string doc = result_json(res, table->n()).dump(2) + "\n";
  if (args.out) {
    try {
      write_text_file(*args.out, doc);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kParseError;
    }
    out << summary_line(res) << '\n';
  } else {
    out << doc;
    err << summary_line(res) << '\n';
  }
  return kOk;
}

int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err) {
  DiscreteSeq f;
  if (args.format == "values") {
    std::ifstream in(args.input);
    if (!in) {
      err << "error: cannot open '" << args.input << "'\n";
      return kParseError;
    }
    try {
      f = read_values(in);
    } catch (const ParseError& e) {
      err << "error: " << args.input << ": " << e.what() << '\n';
      return kParseError;
    }
  } else {
    InputFormat format;
    try {
      format = parse_format(args.format);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kParseError;
    }
    const auto table = load_counts(args.input, format, err);
    if (!table) return kParseError;
    f = empirical_pmf(*table).seq();
  }
  if (f.empty()) {
    err << "error: sequence is identically zero\n";
    return kParseError;
  }
  const MonotonyCheck mc = is_kmonotone(f, args.k);
  const json doc{{"k", args.k},
                 {"monotone", mc.monotone},
                 {"violations", mc.violations},
                 {"knots", knots(f, args.k)},
                 {"smax", *f.smax()}};
  out << doc.dump() << '\n';
  return kOk;
}

int cmd_basis(const BasisArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const std::string m = u128_string(mass_exact(args.k, args.j));
    out << "i,qbar,mass,q\n";
    for (std::size_t i = 0; i <= args.j; ++i) {
      out << i << ',' << u128_string(qbar_exact(args.k, args.j, i)) << ',' << m
          << ',' << format_double(q(args.k, args.j, i)) << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
  return kOk;
}

int cmd_thresholds(unsigned lmax, std::ostream& out, std::ostream& err) {
  if (lmax < 1 || lmax > 10) {
    err << "error: --lmax must be in [1, 10]\n";
    return kParseError;
  }
  out << "l,lambda\n";
  for (unsigned l = 1; l <= lmax; ++l) {
    out << l << ',' << format_double(poisson_kmono_threshold(l)) << '\n';
  }
  return kOk;
}

namespace {

struct LoadedConfig {
  SimConfig config;
  bool has_seed = false;
};

LoadedConfig config_from_json(const std::string& path, bool full) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  static const std::vector<std::string> known{"targets", "ns",   "ks",      "modes",
                                              "reps",    "seed", "threads", "full"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw std::runtime_error(path + ": unknown key '" + key + "'");
    }
  }
  SimConfig c = default_grid(full || j.value("full", false));
  if (j.contains("targets")) c.targets = j["targets"].get<std::vector<std::string>>();
  if (j.contains("ns")) c.ns = j["ns"].get<std::vector<std::size_t>>();
  if (j.contains("ks")) c.ks = j["ks"].get<std::vector<unsigned>>();
  if (j.contains("modes")) {
    c.modes.clear();
    for (const auto& m : j["modes"].get<std::vector<std::string>>()) {
      c.modes.push_back(parse_estimator(m));
    }
  }
  if (j.contains("reps")) c.reps = j["reps"].get<std::size_t>();
  if (j.contains("threads")) c.threads = j["threads"].get<unsigned>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  return {std::move(c), j.contains("seed")};
}

}  // namespace

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  SimConfig c;
  try {
    if (args.config) {
      auto loaded = config_from_json(*args.config, args.full);
      if (!loaded.has_seed && !args.seed) {
        throw std::invalid_argument("a seed is required (--seed or \"seed\" in the config)");
      }
      c = std::move(loaded.config);
    } else {
      if (!args.seed) throw std::invalid_argument("--seed is required");
      c = default_grid(args.full);
      if (!args.targets.empty()) c.targets = args.targets;
      if (!args.ns.empty()) c.ns = args.ns;
      if (!args.ks.empty()) c.ks = args.ks;
    }
    if (args.seed) c.seed = *args.seed;
    if (!args.modes.empty()) {
      c.modes.clear();
      for (const auto& m : args.modes) c.modes.push_back(parse_estimator(m));
    }
    if (args.reps) c.reps = *args.reps;
    if (args.threads) c.threads = *args.threads;
    c.validate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }

  const bool large = std::any_of(c.ns.begin(), c.ns.end(), [](std::size_t n) {
    return n > 1000;
  });
  if (large) {
    err << "warning: grid includes n > 1000; this run may take a long time\n";
  }

  namespace fs = std::filesystem;
  try {
    fs::create_directories(args.out_dir);
    const SimResult res = run_grid(c);
    emit_csv(res.records, (fs::path(args.out_dir) / "results.csv").string());
    emit_plotdata(res.records, (fs::path(args.out_dir) / "plotdata.csv").string());
    const std::size_t cells = c.targets.size() * c.ns.size() * c.ks.size() * c.modes.size();
    out << "cells=" << cells << " reps=" << c.reps << " failed=" << res.failed_cells
        << " out=" << args.out_dir << '\n';
    if (!res.ok()) {
      for (const auto& r : res.records) {
        if (r.error.empty() || r.loss != loss_names().front()) continue;
        err << "cell " << r.target << " n=" << r.n << " k=" << r.k
            << " mode=" << to_string(r.mode) << ": " << r.error << '\n';
      }
      return kPartialFailure;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kPartialFailure;
  }
  return kOk;
}

}  // namespace kmono::cli
