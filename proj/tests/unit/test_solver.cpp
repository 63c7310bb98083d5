#include <algorithm>
#include <random>

#include "../support.hpp"
#include "doctest.h"
#include "wfprop/generators.hpp"
#include "wfprop/oracle.hpp"
#include "wfprop/solver.hpp"

using namespace wfprop;

TEST_CASE("config names and validation") {
  CHECK(SolverConfig::from_props("up,fl,dom").name() == "up,fl,dom");
  CHECK(SolverConfig::from_props("dom,fl").name() == "up,fl,dom");
  CHECK(SolverConfig::from_props("up").name() == "up");
  CHECK_THROWS(SolverConfig::from_props("up,dom").validate());
  CHECK_THROWS(SolverConfig::from_props("up,foo"));
}

TEST_CASE("example 1 answer sets in every config") {
  const Program p = parse_program(testing::kExample1);
  const auto want = oracle::enumerate_answer_sets(p);
  for (const char* props : {"up", "up,fl", "up,fl,dom", "up,blprobe", "up,fl,blprobe", "up,fl,dom,blprobe"}) {
    const auto r = solve(p, SolverConfig::from_props(props));
    auto got = r.answer_sets;
    std::ranges::sort(got);
    CHECK(got == want);
    CHECK(r.complete);
  }
}

TEST_CASE("odd loop is unsatisfiable") {
  const auto r = solve(parse_program("a :- not a.\n"), SolverConfig::from_props("up,fl,dom"));
  CHECK(r.answer_sets.empty());
  CHECK(r.stats.conflicts >= 1);
}

TEST_CASE("enumeration limit and assumptions") {
  const Program p = parse_program(testing::kExample1);
  SolverConfig c = SolverConfig::from_props("up,fl");
  c.enum_limit = 1;
  CHECK(solve(p, c).answer_sets.size() == 1);
  c.enum_limit = 0;
  const std::vector<Literal> as{Literal::true_of(*p.find_atom("e"))};
  const auto r = solve(p, c, as);
  REQUIRE(r.answer_sets.size() == 1);
  CHECK(std::ranges::find(r.answer_sets[0], *p.find_atom("b")) != r.answer_sets[0].end());
}

TEST_CASE("seeded search is deterministic") {
  std::mt19937_64 rng(2);
  const Program p = gen::random_program(rng, {.atoms = 12, .rules = 20});
  SolverConfig c = SolverConfig::from_props("up,fl,dom");
  c.heuristic = Heuristic::SeededRandom;
  c.seed = 42;
  const auto r1 = solve(p, c), r2 = solve(p, c);
  CHECK(r1.answer_sets == r2.answer_sets);
  CHECK(r1.stats.branches == r2.stats.branches);
  CHECK(r1.stats.inferences.dom == r2.stats.inferences.dom);
}

TEST_CASE("root propagation is sound") {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 200; ++round) {
    const Program p = gen::random_program(rng, {});
    const auto models = oracle::enumerate_answer_sets(p);
    Engine e(p, SolverConfig::from_props("up,fl,dom,blprobe"));
    const auto c = e.propagate();
    if (models.empty()) continue;
    REQUIRE_FALSE(c);
    for (Literal l : e.assignment().trail()) {
      if (!e.assignment().is_atom(l.var())) continue;
      for (const auto& m : models) CHECK(std::ranges::binary_search(m, l.var()) == l.positive());
    }
  }
}

TEST_CASE("explanations for dominator inferences") {
  const Program p = parse_program(testing::kExample1);
  SolverConfig c = SolverConfig::from_props("up,fl,dom");
  c.explain = true;
  Engine e(p, c);
  REQUIRE_FALSE(e.propagate());
  REQUIRE_FALSE(e.assume_all(std::vector<Literal>{Literal::true_of(*p.find_atom("c"))}));
  CHECK(e.assignment().reason(*p.find_atom("a")).source == Source::Dominator);
  CHECK(e.inferences().dom > 0);
  CHECK_FALSE(e.explanations().empty());
}
