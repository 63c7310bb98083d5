#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "wfprop/assignment.hpp"
#include "wfprop/flowgraph.hpp"
#include "wfprop/program.hpp"

namespace testing {

inline constexpr const char* kExample1 =
    "a :- not b.\nb :- not a.\nc :- d.\nd :- c.\ne :- f.\nf :- e.\nc :- a.\ne :- not a.\n";
inline constexpr const char* kExample2 = "a :- b, c.\nb :- a.\nb :- not c.\nc :- not b.\n";
inline constexpr const char* kExample3 = "a :- b, not c.\na :- b, not d.\nb :- not c.\nc :- not d.\nd :- not c.\n";

/// Literal set from "Ta", "F{not a}", "T{b,c}" strings.
inline std::set<wfprop::Literal> literals(const wfprop::Program& p, std::initializer_list<std::string> texts) {
  std::set<wfprop::Literal> out;
  for (const auto& t : texts) {
    std::string s = t;
    s.insert(1, ":");
    s[0] = static_cast<char>(std::tolower(s[0]));
    out.insert(wfprop::parse_literal(p, s));
  }
  return out;
}

inline std::set<wfprop::Literal> trail_set(const wfprop::Assignment& a) {
  return {a.trail().begin(), a.trail().end()};
}

inline std::string show(const wfprop::Program& p, const std::set<wfprop::Literal>& ls) {
  std::string out = "{";
  for (auto l : ls) out += (out.size() > 1 ? ", " : "") + wfprop::literal_text(p, l);
  return out + "}";
}

/// Nodes reachable from 0 when `removed` is deleted.
inline std::vector<bool> reach_without(const std::vector<std::vector<std::uint32_t>>& succ, std::int64_t removed) {
  std::vector<bool> seen(succ.size(), false);
  if (removed == 0 || succ.empty()) return seen;
  std::vector<std::uint32_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    for (auto v : succ[u])
      if (!seen[v] && static_cast<std::int64_t>(v) != removed) {
        seen[v] = true;
        stack.push_back(v);
      }
  }
  return seen;
}

/// Dominator sets by node deletion: u dominates v iff v is reachable and
/// deleting u makes it unreachable (plus reflexivity). Returns the
/// immediate dominator of every node, -1 for the source and unreachable nodes.
inline std::vector<std::int32_t> naive_idom(const wfprop::SupportFlowgraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<std::uint32_t>> succ(n);
  for (std::uint32_t u = 0; u < n; ++u) succ[u].assign(g.successors(u).begin(), g.successors(u).end());
  const auto base = reach_without(succ, -1);
  std::vector<std::vector<bool>> dom(n, std::vector<bool>(n, false));  // dom[u][v]
  for (std::uint32_t u = 0; u < n; ++u) {
    const auto r = reach_without(succ, u);
    for (std::uint32_t v = 0; v < n; ++v) dom[u][v] = base[v] && (u == v || !r[v]);
  }
  std::vector<std::int32_t> idom(n, -1);
  for (std::uint32_t v = 1; v < n; ++v) {
    if (!base[v]) continue;
    // The strict dominator dominated by every other strict dominator.
    for (std::uint32_t u = 0; u < n; ++u) {
      if (u == v || !dom[u][v]) continue;
      bool lowest = true;
      for (std::uint32_t w = 0; w < n && lowest; ++w)
        if (w != v && w != u && dom[w][v] && !dom[w][u]) lowest = false;
      if (lowest) idom[v] = static_cast<std::int32_t>(u);
    }
  }
  return idom;
}

}  // namespace testing
