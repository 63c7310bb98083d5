#include <memory>
#include <random>
#include <span>

#include "../support.hpp"
#include "doctest.h"
#include "wfprop/flowgraph.hpp"
#include "wfprop/generators.hpp"

using namespace wfprop;
using testing::literals;

namespace {

std::uint32_t node(const Program& p, const SupportFlowgraph& g, const char* text) {
  return g.var_node(parse_literal(p, std::string("t:") + text).var());
}

// Contiguous membership flags (std::vector<bool> is not).
struct Side {
  std::unique_ptr<bool[]> flags;
  std::size_t size;
  operator std::span<const bool>() const { return {flags.get(), size}; }
};

Side flags(std::size_t n, bool value) {
  Side s{std::make_unique<bool[]>(n), n};
  std::fill_n(s.flags.get(), n, value);
  return s;
}

Side side(const Program& p, const SupportFlowgraph& g, std::initializer_list<const char*> source_side) {
  Side s = flags(g.num_nodes(), false);
  s.flags[SupportFlowgraph::kSource] = true;
  for (const char* t : source_side) s.flags[node(p, g, t)] = true;
  return s;
}

bool has_edge(const SupportFlowgraph& g, std::uint32_t u, std::uint32_t v) {
  return std::ranges::find(g.successors(u), v) != g.successors(u).end();
}

}  // namespace

TEST_CASE("example 2 flowgraph") {
  const Program p = parse_program(testing::kExample2);
  const Assignment a(p);
  const auto g = build_flowgraph(p, a);
  CHECK(g.num_nodes() == 1 + p.num_atoms() + p.num_bodies());
  // The body {b,c} lies in the loop {a,b}: only b supports it.
  CHECK(has_edge(g, node(p, g, "b"), node(p, g, "{b,c}")));
  CHECK_FALSE(has_edge(g, node(p, g, "c"), node(p, g, "{b,c}")));
  CHECK(has_edge(g, SupportFlowgraph::kSource, node(p, g, "{not b}")));
  CHECK(has_edge(g, node(p, g, "{not b}"), node(p, g, "c")));
  const auto t = compute_dominators(g);
  CHECK(t.idom(node(p, g, "a")) == static_cast<std::int32_t>(node(p, g, "{b,c}")));
  CHECK(t.idom(node(p, g, "c")) == static_cast<std::int32_t>(node(p, g, "{not b}")));
}

TEST_CASE("example 2 support cuts") {
  const Program p = parse_program(testing::kExample2);
  const auto g = build_flowgraph(p, Assignment(p));
  const auto c = validate_cut(g, side(p, g, {"c", "{not b}", "{not c}"}));
  CHECK(c.support);
  CHECK(c.front == std::vector<std::uint32_t>{node(p, g, "{not c}")});
  // Second cut with c kept on the sink side only.
  const auto c2 = validate_cut(g, side(p, g, {"b", "{b,c}", "{not b}", "{not c}"}));
  CHECK(c2.support);
  std::vector<std::uint32_t> front{node(p, g, "{b,c}"), node(p, g, "{not b}")};
  std::ranges::sort(front);
  auto got = c2.front;
  std::ranges::sort(got);
  CHECK(got == front);
}

TEST_CASE("example 3 cut has an atom front") {
  const Program p = parse_program(testing::kExample3);
  const auto g = build_flowgraph(p, Assignment(p));
  const auto c = validate_cut(g, side(p, g, {"b", "c", "d", "{not c}", "{not d}"}));
  CHECK(c.atom);
  CHECK_FALSE(c.support);
  CHECK(c.front == std::vector<std::uint32_t>{node(p, g, "b")});
}

TEST_CASE("malformed cuts") {
  const Program p = parse_program(testing::kExample2);
  const auto g = build_flowgraph(p, Assignment(p));
  Side s = flags(g.num_nodes(), true);
  s.flags[SupportFlowgraph::kSource] = false;
  CHECK_FALSE(validate_cut(g, s).support);
  CHECK_FALSE(validate_cut(g, flags(2, true)).support);
}

TEST_CASE("false bodies leave the flowgraph") {
  const Program p = parse_program(testing::kExample1);
  Assignment a(p);
  a.assume(*literals(p, {"F{a}"}).begin());
  const auto g = build_flowgraph(p, a);
  CHECK(g.successors(node(p, g, "{a}")).empty());
  CHECK(g.predecessors(node(p, g, "c")).size() == 1);
}

TEST_CASE("example 3 dominators after Ta") {
  const Program p = parse_program(testing::kExample3);
  Assignment a(p);
  a.assume(*literals(p, {"Ta"}).begin());
  const auto g = build_flowgraph(p, a);
  const auto t = compute_dominators(g);
  CHECK(t.idom(node(p, g, "a")) == static_cast<std::int32_t>(node(p, g, "b")));
  const auto dominated = dominated_atoms(g, t, node(p, g, "b"));
  CHECK(std::ranges::find(dominated, *p.find_atom("a")) != dominated.end());
}

TEST_CASE("lengauer-tarjan matches node deletion") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 100; ++round) {
    const Program p = gen::random_program(rng, {.atoms = 10, .rules = 16});
    const auto a = gen::random_closed_assignment(rng, p, 2);
    if (!a) continue;
    const auto g = build_flowgraph(p, *a);
    const auto t = compute_dominators(g);
    const auto want = testing::naive_idom(g);
    for (std::uint32_t n = 1; n < g.num_nodes(); ++n) CHECK(t.idom(n) == want[n]);
  }
}

TEST_CASE("dot output is deterministic") {
  const Program p = parse_program(testing::kExample3);
  const auto g = build_flowgraph(p, Assignment(p));
  const auto t = compute_dominators(g);
  const auto d1 = to_dot(p, g, &t);
  CHECK(d1 == to_dot(p, build_flowgraph(p, Assignment(p)), &t));
  CHECK(d1.starts_with("digraph"));
  CHECK(to_dot(p, g, nullptr).size() < d1.size());
}
