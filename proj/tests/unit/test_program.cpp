#include <algorithm>

#include "../support.hpp"
#include "doctest.h"
#include "wfprop/assignment.hpp"
#include "wfprop/program.hpp"

using namespace wfprop;

namespace {

BodyId body_id(const Program& p, const char* text) {
  const Literal l = parse_literal(p, std::string("t:") + text);
  return static_cast<BodyId>(l.var() - p.num_atoms());
}

AtomId atom(const Program& p, const char* name) { return *p.find_atom(name); }

// Reachability closure of the dependency graph, compared with scc ids.
bool same_scc_naive(const DependencyGraph& g, std::uint32_t u, std::uint32_t v) {
  auto reach = [&](std::uint32_t from) {
    std::vector<bool> seen(g.num_nodes(), false);
    std::vector<std::uint32_t> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      for (auto y : g.successors[x])
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
    }
    return seen;
  };
  return reach(u)[v] && reach(v)[u];
}

}  // namespace

TEST_CASE("example 1 sizes") {
  const Program p = parse_program(testing::kExample1);
  CHECK(p.num_atoms() == 6);
  CHECK(p.num_bodies() == 7);
  CHECK(p.num_rules() == 8);
  CHECK(p.bodies_of(atom(p, "e")).size() == 2);
  CHECK(p.heads_of(body_id(p, "{not a}")).size() == 2);
}

TEST_CASE("scc ids agree with mutual reachability") {
  for (const char* text : {testing::kExample1, testing::kExample2, testing::kExample3}) {
    const Program p = parse_program(text);
    const auto g = dependency_graph(p);
    const auto ids = scc_decompose(g);
    for (std::uint32_t u = 0; u < g.num_nodes(); ++u)
      for (std::uint32_t v = 0; v < g.num_nodes(); ++v) CHECK((ids[u] == ids[v]) == same_scc_naive(g, u, v));
  }
}

TEST_CASE("example 1 loops") {
  const Program p = parse_program(testing::kExample1);
  CHECK(p.scc_of_atom(atom(p, "c")) == p.scc_of_atom(atom(p, "d")));
  CHECK(p.scc_of_atom(atom(p, "e")) == p.scc_of_atom(atom(p, "f")));
  CHECK(p.scc_of_atom(atom(p, "a")) != p.scc_of_atom(atom(p, "b")));
  CHECK(p.is_internal(atom(p, "c"), body_id(p, "{d}")));
  CHECK_FALSE(p.is_internal(atom(p, "c"), body_id(p, "{a}")));
}

TEST_CASE("classification") {
  CHECK(parse_program(testing::kExample1).classification() == ProgramClass::Unary);
  CHECK(parse_program(testing::kExample3).classification() == ProgramClass::Unary);
  CHECK(parse_program(testing::kExample2).classification() == ProgramClass::ComponentUnary);
  CHECK(parse_program("a :- b, c.\nb :- a.\nc :- a.\n").classification() == ProgramClass::General);
  CHECK(to_string(ProgramClass::ComponentUnary) == "component-unary");
}

TEST_CASE("external support") {
  const Program p = parse_program(testing::kExample1);
  const std::vector<AtomId> cd{atom(p, "c"), atom(p, "d")};
  CHECK(external_support(p, cd) == std::vector<BodyId>{body_id(p, "{a}")});
  const std::vector<AtomId> ef{atom(p, "e"), atom(p, "f")};
  CHECK(external_support(p, ef) == std::vector<BodyId>{body_id(p, "{not a}")});

  Assignment a(p);
  a.assume(Literal::false_of(a.body_var(body_id(p, "{a}"))));
  CHECK(external_support(p, cd, &a).empty());
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_program("a :- b"), ParseError);
  CHECK_THROWS_AS(parse_program("a :- ."), ParseError);
  CHECK_THROWS_AS(parse_program("a b."), ParseError);
  try {
    parse_program("a.\nb :- ,c.\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("text round trip") {
  for (const char* text : {testing::kExample1, testing::kExample2, testing::kExample3}) {
    const Program p = parse_program(text);
    const Program q = parse_program(to_text(p));
    CHECK(to_text(q) == to_text(p));
    CHECK(q.num_bodies() == p.num_bodies());
    CHECK(q.num_rules() == p.num_rules());
  }
}

TEST_CASE("facts and duplicate rules") {
  const Program p = parse_program("a.\na.\nb :- a, a.\n");
  CHECK(p.num_rules() == 2);
  CHECK(p.body(body_id(p, "{}")).positive.empty());
  CHECK(p.body(body_id(p, "{a}")).positive.size() == 1);
}
