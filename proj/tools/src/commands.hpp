#pragma once

// Subcommand implementations behind the `kmono` executable. Each returns the
// process exit code and writes only to the streams it is given.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kmono/seq.hpp"

namespace kmono::cli {

enum Exit : int {
  kOk = 0,
  kParseError = 1,
  kPartialFailure = 2,
  kCriterionFailure = 3,
};

struct FitArgs {
  std::string input;
  std::string format = "counts";  // counts | samples
  unsigned k = 2;
  std::string mode = "prob";      // prob | seq
  std::optional<std::string> out;
  double tol = 1e-10;
};

struct CheckArgs {
  std::string input;
  unsigned k = 2;
  std::string format = "values";  // values | counts | samples
};

struct BasisArgs {
  unsigned k = 2;
  std::size_t j = 0;
};

struct SimulateArgs {
  std::optional<std::string> config;
  std::vector<std::string> targets;
  std::vector<std::size_t> ns;
  std::vector<unsigned> ks;
  std::vector<std::string> modes;
  std::optional<std::size_t> reps;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string out_dir;
  bool full = false;
};

/// One non-negative real per line; blank lines are skipped.
DiscreteSeq read_values(std::istream& in);

int cmd_fit(const FitArgs& args, std::ostream& out, std::ostream& err);
int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err);
int cmd_basis(const BasisArgs& args, std::ostream& out, std::ostream& err);
int cmd_thresholds(unsigned lmax, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches. Usage errors return kParseError.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kmono::cli
