#include <doctest.h>

#include <sstream>

#include "kmono/empirical.hpp"

using namespace kmono;
using Counts = std::map<std::uint64_t, std::uint64_t>;

namespace {

CountTable parse(const std::string& text, InputFormat f) {
  std::istringstream in(text);
  return read_counts(in, f);
}

std::size_t error_line(const std::string& text, InputFormat f) {
  try {
    parse(text, f);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("empirical pmf examples") {
  CHECK(empirical_pmf(CountTable(Counts{{1, 10}})).seq() == DiscreteSeq({0.0, 1.0}));
  CHECK(empirical_pmf(CountTable(Counts{{0, 1}, {2, 1}})).seq() == DiscreteSeq({0.5, 0.0, 0.5}));
  const ProbSeq p = empirical_pmf(CountTable(Counts{{0, 3}, {1, 2}, {2, 1}}));
  CHECK(p[0] == 0.5);
  CHECK(p[1] == 2.0 / 6.0);
  CHECK(p[2] == 1.0 / 6.0);
  CHECK(p.smax() == 2u);
  CHECK_THROWS_AS(empirical_pmf(CountTable{}), std::invalid_argument);
}

TEST_CASE("empirical pmf sums to one") {
  CountTable t;
  for (std::uint64_t v = 0; v < 37; ++v) t.add(v, 1 + (v * 7919) % 13);
  CHECK(std::abs(empirical_pmf(t).seq().sum() - 1.0) <= 1e-15);
}

TEST_CASE("count table from samples") {
  const CountTable t = CountTable::from_samples({1, 1, 1});
  CHECK(t.n() == 3);
  CHECK(t.counts().at(1) == 3);
}

TEST_CASE("read counts format") {
  const CountTable t = parse("value,count\n0,3\n1,2\n2,1\n", InputFormat::Counts);
  CHECK(t.n() == 6);
  CHECK(t.counts().at(1) == 2);
  CHECK(parse("\xEF\xBB\xBFvalue,count\r\n4,1\r\n\n", InputFormat::Counts).n() == 1);
  CHECK(parse("value,count\n0,0\n3,2\n", InputFormat::Counts).counts().size() == 1);
}

TEST_CASE("read samples format") {
  const CountTable t = parse("1\n1\n1\n", InputFormat::Samples);
  CHECK(t == CountTable(Counts{{1, 3}}));
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(error_line("0,-1\n", InputFormat::Counts) == 1);
  CHECK(error_line("value,count\n0,3\n0,-1\n", InputFormat::Counts) == 3);
  CHECK(error_line("value,count\n0,3\n1.5,2\n", InputFormat::Counts) == 3);
  CHECK(error_line("value,count\n0,3\n0,2\n", InputFormat::Counts) == 3);
  CHECK(error_line("value,count\n0\n", InputFormat::Counts) == 2);
  CHECK(error_line("1\n-2\n", InputFormat::Samples) == 2);
  CHECK(error_line("1\nx\n", InputFormat::Samples) == 2);
  CHECK_THROWS_AS(parse("value,count\n", InputFormat::Counts), ParseError);
  CHECK_THROWS_AS(parse("", InputFormat::Samples), ParseError);
}

TEST_CASE("missing file") {
  CHECK_THROWS(read_counts_file("/nonexistent/counts.csv", InputFormat::Counts));
}
