#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmono/seq.hpp"

namespace kmono {

/// Observed value -> count. Counts stay integral until empirical_pmf().
class CountTable {
 public:
  CountTable() = default;
  explicit CountTable(std::map<std::uint64_t, std::uint64_t> counts);

  static CountTable from_samples(const std::vector<std::uint64_t>& samples);

  void add(std::uint64_t value, std::uint64_t count = 1);

  const std::map<std::uint64_t, std::uint64_t>& counts() const noexcept {
    return counts_;
  }
  std::uint64_t n() const noexcept { return n_; }

  friend bool operator==(const CountTable&, const CountTable&) = default;

 private:
  std::map<std::uint64_t, std::uint64_t> counts_;
  std::uint64_t n_ = 0;
};

/// p̃(j) = count(j) / n. Throws std::invalid_argument when n == 0.
ProbSeq empirical_pmf(const CountTable& table);

enum class InputFormat { Counts, Samples };

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Reads either a `value,count` CSV (header required) or one sample per line.
CountTable read_counts(std::istream& in, InputFormat format);
CountTable read_counts_file(const std::string& path, InputFormat format);

}  // namespace kmono
