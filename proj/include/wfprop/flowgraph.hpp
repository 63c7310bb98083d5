#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wfprop/assignment.hpp"
#include "wfprop/nogoods.hpp"
#include "wfprop/program.hpp"

namespace wfprop {

/// Node numbering of a support flowgraph.
enum class FlowNodeKind : std::uint8_t { Source, Atom, Body };

/// Support flowgraph of a program w.r.t. an assignment.
///
/// Node 0 is the source; atom a is node 1 + a; body b is node
/// 1 + num_atoms + b. The predecessors of an atom are its non-false bodies;
/// the predecessors of a body are the non-false atoms of its support set
/// (positive atoms in the body's own component, or all positive atoms when
/// none is). Bodies with an empty positive part hang off the source. False
/// nodes keep their incoming edges but have no outgoing ones.
class SupportFlowgraph {
 public:
  static constexpr std::uint32_t kSource = 0;

  SupportFlowgraph() = default;
  /// Structure-only graph for tests: arbitrary edges over n nodes, source 0.
  static SupportFlowgraph from_edges(std::size_t num_nodes, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges);

  std::size_t num_nodes() const { return succ_.size(); }
  std::size_t num_atoms() const { return num_atoms_; }
  std::span<const std::uint32_t> successors(std::uint32_t n) const { return succ_[n]; }
  std::span<const std::uint32_t> predecessors(std::uint32_t n) const { return pred_[n]; }
  bool has_edge(std::uint32_t from, std::uint32_t to) const;
  std::size_t num_edges() const;

  std::uint32_t atom_node(AtomId a) const { return 1 + a; }
  std::uint32_t body_node(BodyId b) const { return static_cast<std::uint32_t>(1 + num_atoms_ + b); }
  FlowNodeKind kind(std::uint32_t n) const {
    if (n == kSource) return FlowNodeKind::Source;
    return n <= num_atoms_ ? FlowNodeKind::Atom : FlowNodeKind::Body;
  }
  AtomId node_atom(std::uint32_t n) const { return n - 1; }
  BodyId node_body(std::uint32_t n) const { return static_cast<BodyId>(n - 1 - num_atoms_); }
  /// Assignment variable of a non-source node.
  Var node_var(std::uint32_t n) const { return n - 1; }
  std::uint32_t var_node(Var v) const { return v + 1; }

  /// phi(b): the positive atoms b may draw support from.
  std::span<const AtomId> support_atoms(BodyId b) const { return phi_[b]; }

 private:
  friend SupportFlowgraph build_flowgraph(const Program&, const Assignment&);

  std::size_t num_atoms_ = 0;
  std::vector<std::vector<std::uint32_t>> succ_;
  std::vector<std::vector<std::uint32_t>> pred_;
  std::vector<std::vector<AtomId>> phi_;
};

SupportFlowgraph build_flowgraph(const Program& p, const Assignment& a);

/// Immediate dominators from the source node.
class DominatorTree {
 public:
  static constexpr std::int32_t kNone = -1;

  DominatorTree() = default;
  explicit DominatorTree(std::vector<std::int32_t> idom);

  std::size_t size() const { return idom_.size(); }
  /// kNone for the source and for unreachable nodes.
  std::int32_t idom(std::uint32_t n) const { return idom_[n]; }
  bool reachable(std::uint32_t n) const { return n == 0 || idom_[n] != kNone; }
  /// Reflexive; every node dominates an unreachable one.
  bool dominates(std::uint32_t u, std::uint32_t v) const;
  /// Strict dominators of v from idom(v) up to and including the source.
  std::vector<std::uint32_t> dominator_chain(std::uint32_t v) const;

 private:
  std::vector<std::int32_t> idom_;
};

/// Lengauer-Tarjan (simple version, path compression without balancing).
DominatorTree compute_dominators(const SupportFlowgraph& g);

/// A literal derived from the dominator tree.
struct DominatorConsequence {
  Literal literal;
  /// Flowgraph node that dominates `trigger` (a body for WFJ, an atom for WFD).
  std::uint32_t dominator;
  /// True atom whose dominator chain produced the literal.
  AtomId trigger;
};

/// Every strict dominator (other than the source) of every true atom, as a
/// T literal, regardless of its current value. Ordered by trigger atom then
/// chain position; each dominator appears once.
std::vector<DominatorConsequence> dominator_candidates(const Program& p, const Assignment& a,
                                                       const SupportFlowgraph& g, const DominatorTree& t);

struct DominatorResult {
  /// Consequences over unassigned variables.
  std::vector<DominatorConsequence> consequences;
  /// Set when a consequence is already false, or a true atom is
  /// unreachable from the source (then the unreachable atoms are unfounded).
  std::optional<Conflict> conflict;
};

/// WFJ (body dominators) and WFD (atom dominators) consequences. Requires
/// a body-saturated, unfounded-free assignment for soundness.
DominatorResult dominator_consequences(const Program& p, const Assignment& a, const SupportFlowgraph& g,
                                       const DominatorTree& t);

/// Atoms dominated by `node` (reachable ones only) — the set U a
/// consequence is justified by.
std::vector<AtomId> dominated_atoms(const SupportFlowgraph& g, const DominatorTree& t, std::uint32_t node);

struct CutReport {
  bool support = false;  ///< front and back consist of bodies only
  bool atom = false;     ///< front of atoms only, back of bodies only
  std::string reason;    ///< why neither holds (or why the cut is malformed)
  std::vector<std::uint32_t> front;  ///< source-side nodes with an edge into the sink side
  std::vector<std::uint32_t> back;   ///< sink-side nodes with an edge into the source side
};

/// Classifies a cut given by the source-side membership of every node.
CutReport validate_cut(const SupportFlowgraph& g, std::span<const bool> source_side);

struct DotOptions {
  bool dominator_tree = true;
};

/// Graphviz rendering, nodes in index order.
std::string to_dot(const Program& p, const SupportFlowgraph& g, const DominatorTree* t, DotOptions opts = {});

}  // namespace wfprop
