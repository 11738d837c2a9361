#include "kmono/empirical.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <string_view>

namespace kmono {

CountTable::CountTable(std::map<std::uint64_t, std::uint64_t> counts)
    : counts_(std::move(counts)) {
  for (const auto& [v, c] : counts_) n_ += c;
}

CountTable CountTable::from_samples(const std::vector<std::uint64_t>& samples) {
  CountTable t;
  for (auto s : samples) t.add(s);
  return t;
}

void CountTable::add(std::uint64_t value, std::uint64_t count) {
  counts_[value] += count;
  n_ += count;
}

ProbSeq empirical_pmf(const CountTable& table) {
  if (table.n() == 0) throw std::invalid_argument("empty count table");
  const auto last = table.counts().rbegin()->first;
  std::vector<double> p(last + 1, 0.0);
  const double n = static_cast<double>(table.n());
  for (const auto& [v, c] : table.counts()) p[v] = static_cast<double>(c) / n;
  return ProbSeq::from(DiscreteSeq(std::move(p)));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_nonneg(std::string_view field, std::size_t line,
                           const char* what) {
  field = trim(field);
  if (field.empty()) throw ParseError(line, std::string("missing ") + what);
  if (field.front() == '-') {
    throw ParseError(line, std::string("negative ") + what + " '" +
                               std::string(field) + "'");
  }
  if (field.front() == '+') field.remove_prefix(1);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line, std::string("not a nonnegative integer ") + what +
                               " '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

CountTable read_counts(std::istream& in, InputFormat format) {
  std::map<std::uint64_t, std::uint64_t> counts;
  std::string raw;
  std::size_t line = 0;
  bool header_seen = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view row = trim(raw);
    if (line == 1 && row.size() >= 3 &&
        static_cast<unsigned char>(row[0]) == 0xEF) {
      row.remove_prefix(3);  // UTF-8 BOM
    }
    if (row.empty()) continue;
    if (format == InputFormat::Samples) {
      counts[parse_nonneg(row, line, "sample")] += 1;
      continue;
    }
    if (!header_seen) {
      if (row != "value,count") {
        throw ParseError(line, "expected header 'value,count'");
      }
      header_seen = true;
      continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError(line, "expected two fields 'value,count'");
    }
    const auto value = parse_nonneg(row.substr(0, comma), line, "value");
    const auto count = parse_nonneg(row.substr(comma + 1), line, "count");
    if (!counts.emplace(value, count).second) {
      throw ParseError(line, "duplicate value " + std::to_string(value));
    }
  }
  if (format == InputFormat::Counts && !header_seen) {
    throw ParseError(line, "missing header 'value,count'");
  }
  // zero counts are legal but carry no support
  std::erase_if(counts, [](const auto& kv) { return kv.second == 0; });
  CountTable table(std::move(counts));
  if (table.n() == 0) throw ParseError(line, "no observations");
  return table;
}

CountTable read_counts_file(const std::string& path, InputFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_counts(in, format);
}

}  // namespace kmono
