#include <algorithm>
#include "doctest.h"
#include "wfprop/oracle.hpp"
#include "wfprop/reach.hpp"

using namespace wfprop;
using reach::Membership;

TEST_CASE("loop witness encoding") {
  const auto inst = reach::loop_witness();
  const auto enc = reach::encode_reach(inst);
  CHECK(enc.assumptions.size() == 3);
  CHECK(enc.program.find_atom("nedge(s,u)").has_value());
  CHECK_FALSE(enc.start[1].has_value());
  CHECK(enc.program.classification() != ProgramClass::General);
  // The only completion keeps edge(s,u).
  const auto r = solve(enc.program, SolverConfig::from_props("up,fl"), enc.assumptions);
  REQUIRE(r.answer_sets.size() == 1);
  CHECK(std::ranges::binary_search(r.answer_sets[0], enc.edge[2]));
}

TEST_CASE("text round trip") {
  const auto inst = reach::search_instance(4, 6, 0.4);
  const auto text = reach::to_text(inst);
  const auto back = reach::parse_instance(text);
  CHECK(reach::to_text(back) == text);
  CHECK(back.single_successor);
}

TEST_CASE("parse errors") {
  CHECK_THROWS(reach::parse_instance("edge a b in\n"));
  CHECK_THROWS(reach::parse_instance("nodes 2\nedge n0 n2 in\n"));
  CHECK_THROWS(reach::parse_instance("nodes 2\nedge n0 n1 out\n"));
  CHECK_THROWS(reach::parse_instance("nodes 2\noutdegree 2\n"));
  CHECK_NOTHROW(reach::parse_instance("# comment\nnodes 2 a b\nedge a b maybe # trailing\n"));
}

TEST_CASE("generators are deterministic and satisfiable") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CHECK(reach::to_text(reach::search_instance(seed)) == reach::to_text(reach::search_instance(seed)));
    const auto inst = reach::random_instance(seed, 5, 0.4, 0.5, reach::FixMode::None);
    const auto enc = reach::encode_reach(inst);
    CHECK_FALSE(solve(enc.program, SolverConfig::from_props("up,fl"), enc.assumptions).answer_sets.empty());
  }
}

TEST_CASE("single successor completions") {
  // n0 -> n1 and n0 -> n2 cannot both be kept.
  const auto inst = reach::parse_instance(
      "nodes 3\nedge n0 n1 maybe\nedge n0 n2 maybe\nstart n0 in\nstart n1 out\nstart n2 out\nreached n1 in\n"
      "outdegree 1\n");
  const auto report = reach::check_domain_consistency(inst, SolverConfig::from_props("up,fl"));
  CHECK(report.domain_consistent());
  const auto enc = reach::encode_reach(inst);
  const auto r = solve(enc.program, SolverConfig::from_props("up,fl"), enc.assumptions);
  REQUIRE(r.answer_sets.size() == 1);
  CHECK_FALSE(std::ranges::binary_search(r.answer_sets[0], enc.edge[1]));
}

TEST_CASE("domain consistency guard") {
  CHECK_THROWS_AS(reach::check_domain_consistency(reach::search_instance(0, 9), SolverConfig::from_props("up,fl")),
                  oracle::GuardExceeded);
}
