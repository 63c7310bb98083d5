#include <random>

#include "../support.hpp"
#include "doctest.h"
#include "wfprop/generators.hpp"
#include "wfprop/oracle.hpp"

using namespace wfprop;
using testing::literals;

namespace {

oracle::AtomSet atoms(const Program& p, std::initializer_list<const char*> names) {
  oracle::AtomSet out;
  for (const char* n : names) out.push_back(*p.find_atom(n));
  std::ranges::sort(out);
  return out;
}

}  // namespace

TEST_CASE("reduct and least model") {
  const Program p = parse_program(testing::kExample1);
  const auto r = oracle::reduct(p, atoms(p, {"a", "c", "d"}));
  CHECK(oracle::least_model(r) == atoms(p, {"a", "c", "d"}));
  CHECK_THROWS(oracle::least_model(p));
}

TEST_CASE("answer sets of the examples") {
  const Program p1 = parse_program(testing::kExample1);
  const auto s1 = oracle::enumerate_answer_sets(p1);
  REQUIRE(s1.size() == 2);
  CHECK(s1[0] == atoms(p1, {"a", "c", "d"}));
  CHECK(s1[1] == atoms(p1, {"b", "e", "f"}));
  CHECK(oracle::enumerate_answer_sets(parse_program("a :- not a.\n")).empty());
  const Program p3 = parse_program(testing::kExample3);
  CHECK(oracle::enumerate_answer_sets(p3).size() == 2);
}

TEST_CASE("loops") {
  const Program p = parse_program(testing::kExample1);
  const auto loops = oracle::enumerate_loops(p);
  CHECK(loops.size() == 2);
  CHECK(std::ranges::find(loops, atoms(p, {"c", "d"})) != loops.end());
  CHECK(oracle::enumerate_loops(parse_program("a :- a.\nb :- a.\n")).size() == 1);
}

TEST_CASE("guards") {
  std::string text;
  for (int i = 0; i < 24; ++i) text += "x" + std::to_string(i) + " :- not y" + std::to_string(i) + ".\n";
  CHECK_THROWS_AS(oracle::enumerate_answer_sets(parse_program(text)), oracle::GuardExceeded);
}

TEST_CASE("wfj on example 1") {
  const Program p = parse_program(testing::kExample1);
  Assignment a(p);
  a.assume(*literals(p, {"Tc"}).begin());
  // {c,d} gives T{a}; {a,c,d} gives T{not b}.
  CHECK(oracle::wfj(p, a, oracle::Omega::All) == literals(p, {"T{a}", "T{not b}"}));
  CHECK(oracle::wfd(p, a, oracle::Omega::All).contains(*literals(p, {"Ta"}).begin()));
}

TEST_CASE("loops give a subset of all sets") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 100; ++round) {
    const Program p = gen::random_program(rng, {});
    const auto a = gen::random_closed_assignment(rng, p, 3);
    if (!a) continue;
    const auto j_all = oracle::wfj(p, *a, oracle::Omega::All), j_loops = oracle::wfj(p, *a, oracle::Omega::Loops);
    const auto d_all = oracle::wfd(p, *a, oracle::Omega::All), d_loops = oracle::wfd(p, *a, oracle::Omega::Loops);
    CHECK(std::ranges::includes(j_all, j_loops));
    CHECK(std::ranges::includes(d_all, d_loops));
  }
}

TEST_CASE("failed literals cover wfj over loops") {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 100; ++round) {
    const Program p = gen::random_program(rng, {});
    const auto a = gen::random_closed_assignment(rng, p, 3);
    if (!a) continue;
    const auto bl = oracle::failed_literal_bl(p, *a);
    for (Literal l : oracle::wfj(p, *a, oracle::Omega::Loops))
      if (!a->is_true(l)) CHECK(bl.contains(l));
  }
}
