#include "wfprop/flowgraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace wfprop {

SupportFlowgraph SupportFlowgraph::from_edges(std::size_t num_nodes,
                                              std::span<const std::pair<std::uint32_t, std::uint32_t>> edges) {
  SupportFlowgraph g;
  g.num_atoms_ = num_nodes == 0 ? 0 : num_nodes - 1;
  g.succ_.assign(num_nodes, {});
  g.pred_.assign(num_nodes, {});
  for (auto [from, to] : edges) {
    if (from >= num_nodes || to >= num_nodes) throw std::out_of_range("flowgraph edge out of range");
    g.succ_[from].push_back(to);
    g.pred_[to].push_back(from);
  }
  return g;
}

bool SupportFlowgraph::has_edge(std::uint32_t from, std::uint32_t to) const {
  return std::ranges::find(succ_[from], to) != succ_[from].end();
}

std::size_t SupportFlowgraph::num_edges() const {
  std::size_t n = 0;
  for (const auto& s : succ_) n += s.size();
  return n;
}

SupportFlowgraph build_flowgraph(const Program& p, const Assignment& a) {
  SupportFlowgraph g;
  const std::size_t na = p.num_atoms(), nb = p.num_bodies();
  g.num_atoms_ = na;
  g.succ_.assign(1 + na + nb, {});
  g.pred_.assign(1 + na + nb, {});
  g.phi_.assign(nb, {});
  auto edge = [&](std::uint32_t from, std::uint32_t to) {
    g.succ_[from].push_back(to);
    g.pred_[to].push_back(from);
  };
  for (BodyId b = 0; b < nb; ++b) {
    auto& phi = g.phi_[b];
    for (AtomId q : p.body(b).positive)
      if (p.scc_of_atom(q) == p.scc_of_body(b)) phi.push_back(q);
    if (phi.empty()) phi = p.body(b).positive;
    if (phi.empty()) {
      edge(SupportFlowgraph::kSource, g.body_node(b));
      continue;
    }
    for (AtomId q : phi)
      if (!a.atom_false(q)) edge(g.atom_node(q), g.body_node(b));
  }
  for (const Rule& r : p.rules())
    if (!a.body_false(r.body)) edge(g.body_node(r.body), g.atom_node(r.head));
  return g;
}

// ---------------------------------------------------------------------------
// Dominators

DominatorTree::DominatorTree(std::vector<std::int32_t> idom) : idom_(std::move(idom)) {}

bool DominatorTree::dominates(std::uint32_t u, std::uint32_t v) const {
  if (!reachable(v)) return true;
  for (std::int32_t x = static_cast<std::int32_t>(v); x != kNone; x = idom_[x])
    if (static_cast<std::uint32_t>(x) == u) return true;
  return false;
}

std::vector<std::uint32_t> DominatorTree::dominator_chain(std::uint32_t v) const {
  std::vector<std::uint32_t> out;
  for (std::int32_t x = idom_[v]; x != kNone; x = idom_[x]) out.push_back(static_cast<std::uint32_t>(x));
  return out;
}

DominatorTree compute_dominators(const SupportFlowgraph& g) {
  const std::size_t n = g.num_nodes();
  constexpr std::int32_t kNone = DominatorTree::kNone;
  std::vector<std::int32_t> idom(n, kNone);
  if (n == 0) return DominatorTree(std::move(idom));

  std::vector<std::int32_t> dfnum(n, kNone), parent(n, kNone), semi(n, kNone), ancestor(n, kNone),
      best(n, kNone), samedom(n, kNone);
  std::vector<std::uint32_t> vertex;
  vertex.reserve(n);

  // Preorder numbering.
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0u, 0u}};
  dfnum[0] = 0;
  vertex.push_back(0);
  while (!stack.empty()) {
    auto& [v, pos] = stack.back();
    auto succ = g.successors(v);
    if (pos == succ.size()) {
      stack.pop_back();
      continue;
    }
    std::uint32_t w = succ[pos++];
    if (dfnum[w] != kNone) continue;
    dfnum[w] = static_cast<std::int32_t>(vertex.size());
    vertex.push_back(w);
    parent[w] = static_cast<std::int32_t>(v);
    stack.emplace_back(w, 0);
  }

  std::vector<std::int32_t> path;
  auto lowest_semi_ancestor = [&](std::int32_t v) {
    path.clear();
    std::int32_t x = v;
    while (ancestor[ancestor[x]] != kNone) {
      path.push_back(x);
      x = ancestor[x];
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      std::int32_t y = *it, up = ancestor[y];
      std::int32_t b = best[up];
      ancestor[y] = ancestor[up];
      if (dfnum[semi[b]] < dfnum[semi[best[y]]]) best[y] = b;
    }
    return best[v];
  };

  std::vector<std::vector<std::int32_t>> bucket(n);
  for (std::size_t i = vertex.size() - 1; i >= 1; --i) {
    const auto w = static_cast<std::int32_t>(vertex[i]);
    const std::int32_t p = parent[w];
    std::int32_t s = p;
    for (std::uint32_t pred : g.predecessors(static_cast<std::uint32_t>(w))) {
      const auto v = static_cast<std::int32_t>(pred);
      if (dfnum[v] == kNone) continue;
      std::int32_t candidate = dfnum[v] <= dfnum[w] ? v : semi[lowest_semi_ancestor(v)];
      if (dfnum[candidate] < dfnum[s]) s = candidate;
    }
    semi[w] = s;
    bucket[s].push_back(w);
    ancestor[w] = p;
    best[w] = w;
    for (std::int32_t v : bucket[p]) {
      std::int32_t y = lowest_semi_ancestor(v);
      if (semi[y] == semi[v]) {
        idom[v] = p;
      } else {
        samedom[v] = y;
      }
    }
    bucket[p].clear();
  }
  for (std::size_t i = 1; i < vertex.size(); ++i) {
    const auto w = vertex[i];
    if (samedom[w] != kNone) idom[w] = idom[samedom[w]];
  }
  return DominatorTree(std::move(idom));
}

// ---------------------------------------------------------------------------
// Consequences

std::vector<DominatorConsequence> dominator_candidates(const Program& p, const Assignment& a,
                                                       const SupportFlowgraph& g, const DominatorTree& t) {
  std::vector<DominatorConsequence> out;
  std::vector<bool> seen(g.num_nodes(), false);
  for (AtomId q = 0; q < p.num_atoms(); ++q) {
    if (!a.atom_true(q)) continue;
    const std::uint32_t node = g.atom_node(q);
    if (!t.reachable(node)) continue;
    for (std::int32_t x = t.idom(node); x > 0 && !seen[x]; x = t.idom(static_cast<std::uint32_t>(x))) {
      seen[x] = true;
      const auto ux = static_cast<std::uint32_t>(x);
      out.push_back({Literal::true_of(g.node_var(ux)), ux, q});
    }
  }
  return out;
}

DominatorResult dominator_consequences(const Program& p, const Assignment& a, const SupportFlowgraph& g,
                                       const DominatorTree& t) {
  DominatorResult result;
  for (AtomId q = 0; q < p.num_atoms(); ++q) {
    if (a.atom_true(q) && !t.reachable(g.atom_node(q))) {
      result.conflict = Conflict{Source::Dominator, {Literal::true_of(q)}};
      return result;
    }
  }
  for (const auto& c : dominator_candidates(p, a, g, t)) {
    if (a.is_true(c.literal)) continue;
    if (a.is_false(c.literal)) {
      result.conflict = Conflict{Source::Dominator, {c.literal, Literal::true_of(c.trigger)}};
      return result;
    }
    result.consequences.push_back(c);
  }
  return result;
}

std::vector<AtomId> dominated_atoms(const SupportFlowgraph& g, const DominatorTree& t, std::uint32_t node) {
  std::vector<AtomId> out;
  for (AtomId x = 0; x < g.num_atoms(); ++x) {
    const std::uint32_t v = g.atom_node(x);
    if (v != node && t.reachable(v) && t.dominates(node, v)) out.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cuts

CutReport validate_cut(const SupportFlowgraph& g, std::span<const bool> source_side) {
  CutReport r;
  if (source_side.size() != g.num_nodes()) {
    r.reason = "membership vector does not cover every node";
    return r;
  }
  if (!source_side[SupportFlowgraph::kSource]) {
    r.reason = "source node on the sink side";
    return r;
  }
  for (std::uint32_t u = 0; u < g.num_nodes(); ++u) {
    bool into_other = std::ranges::any_of(g.successors(u), [&](std::uint32_t v) { return source_side[v] != source_side[u]; });
    if (!into_other) continue;
    (source_side[u] ? r.front : r.back).push_back(u);
  }
  auto all_of_kind = [&](const std::vector<std::uint32_t>& nodes, FlowNodeKind k) {
    return std::ranges::all_of(nodes, [&](std::uint32_t n) { return g.kind(n) == k; });
  };
  const bool back_bodies = all_of_kind(r.back, FlowNodeKind::Body);
  r.support = all_of_kind(r.front, FlowNodeKind::Body) && back_bodies;
  r.atom = all_of_kind(r.front, FlowNodeKind::Atom) && back_bodies;
  if (!r.support && !r.atom) r.reason = back_bodies ? "front mixes node kinds" : "back contains a non-body node";
  return r;
}

// ---------------------------------------------------------------------------
// DOT

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const Program& p, const SupportFlowgraph& g, const DominatorTree* t, DotOptions opts) {
  std::string out = "digraph flowgraph {\n  rankdir=LR;\n";
  for (std::uint32_t n = 0; n < g.num_nodes(); ++n) {
    out += "  n" + std::to_string(n) + " [label=\"";
    switch (g.kind(n)) {
      case FlowNodeKind::Source: out += "TOP\", shape=diamond"; break;
      case FlowNodeKind::Atom: out += escape(p.atom_name(g.node_atom(n))) + "\", shape=ellipse"; break;
      case FlowNodeKind::Body: out += escape(p.body_text(g.node_body(n))) + "\", shape=box"; break;
    }
    out += "];\n";
  }
  for (std::uint32_t n = 0; n < g.num_nodes(); ++n) {
    std::vector<std::uint32_t> succ(g.successors(n).begin(), g.successors(n).end());
    std::ranges::sort(succ);
    for (std::uint32_t m : succ) out += "  n" + std::to_string(n) + " -> n" + std::to_string(m) + ";\n";
  }
  if (t && opts.dominator_tree) {
    for (std::uint32_t n = 1; n < g.num_nodes(); ++n) {
      if (t->idom(n) == DominatorTree::kNone) continue;
      out += "  n" + std::to_string(t->idom(n)) + " -> n" + std::to_string(n) +
             " [style=dashed, color=gray, constraint=false];\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace wfprop
