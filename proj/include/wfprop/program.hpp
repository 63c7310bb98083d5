#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wfprop {

using AtomId = std::uint32_t;
using BodyId = std::uint32_t;
/// Node of the dependency graph: atoms occupy [0, num_atoms), bodies follow.
using NodeId = std::uint32_t;

class Assignment;

enum class ProgramClass { Unary, ComponentUnary, General };

std::string_view to_string(ProgramClass c);

/// A rule body as two sorted, duplicate-free atom lists.
struct Body {
  std::vector<AtomId> positive;
  std::vector<AtomId> negative;

  friend bool operator==(const Body&, const Body&) = default;
  friend auto operator<=>(const Body&, const Body&) = default;
};

struct Rule {
  AtomId head;
  BodyId body;

  friend bool operator==(const Rule&, const Rule&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Immutable ground normal logic program.
///
/// Atoms and bodies are numbered densely in order of first occurrence.
/// Bodies are shared between rules with set-equal positive and negative
/// parts. SCCs refer to the dependency graph with edges body -> head and
/// positive atom -> body; a body node shares its component id with atoms
/// exactly when it sits on a cycle through them.
class Program {
 public:
  Program() = default;

  std::size_t num_atoms() const { return atom_names_.size(); }
  std::size_t num_bodies() const { return bodies_.size(); }
  std::size_t num_nodes() const { return num_atoms() + num_bodies(); }
  std::size_t num_rules() const { return rules_.size(); }

  const std::string& atom_name(AtomId a) const { return atom_names_[a]; }
  std::optional<AtomId> find_atom(std::string_view name) const;
  std::optional<BodyId> find_body(const Body& b) const;

  const Body& body(BodyId b) const { return bodies_[b]; }
  std::span<const Rule> rules() const { return rules_; }

  /// bodies(p): bodies of rules with head p.
  std::span<const BodyId> bodies_of(AtomId a) const { return bodies_of_[a]; }
  /// Heads of the rules that use body b.
  std::span<const AtomId> heads_of(BodyId b) const { return heads_of_[b]; }
  /// Bodies containing a in their positive part.
  std::span<const BodyId> positive_occurrences(AtomId a) const { return pos_occ_[a]; }
  /// Bodies containing a in their negative part.
  std::span<const BodyId> negative_occurrences(AtomId a) const { return neg_occ_[a]; }

  NodeId atom_node(AtomId a) const { return a; }
  NodeId body_node(BodyId b) const { return static_cast<NodeId>(num_atoms() + b); }

  std::uint32_t scc_of_atom(AtomId a) const { return scc_id_[a]; }
  std::uint32_t scc_of_body(BodyId b) const { return scc_id_[body_node(b)]; }
  std::uint32_t num_sccs() const { return num_sccs_; }
  /// Atoms of component id, in index order.
  std::span<const AtomId> scc_atoms(std::uint32_t scc) const { return scc_atoms_[scc]; }
  /// Node-level component ids (atoms then bodies).
  std::span<const std::uint32_t> scc_ids() const { return scc_id_; }

  /// True when rule head <- body has a positive body atom in the head's SCC.
  bool is_internal(AtomId head, BodyId b) const { return scc_of_atom(head) == scc_of_body(b); }

  ProgramClass classification() const { return class_; }

  /// "{a,not b}" style rendering; "{}" for the empty body.
  std::string body_text(BodyId b) const;

 private:
  friend class ProgramBuilder;

  std::vector<std::string> atom_names_;
  std::unordered_map<std::string, AtomId> atom_index_;
  std::vector<Body> bodies_;
  std::map<Body, BodyId> body_index_;
  std::vector<Rule> rules_;
  std::vector<std::vector<BodyId>> bodies_of_;
  std::vector<std::vector<AtomId>> heads_of_;
  std::vector<std::vector<BodyId>> pos_occ_;
  std::vector<std::vector<BodyId>> neg_occ_;
  std::vector<std::uint32_t> scc_id_;
  std::vector<std::vector<AtomId>> scc_atoms_;
  std::uint32_t num_sccs_ = 0;
  ProgramClass class_ = ProgramClass::Unary;
};

/// Incremental construction of a Program. Duplicate rules collapse.
class ProgramBuilder {
 public:
  AtomId atom(std::string_view name);
  BodyId body(std::vector<AtomId> positive, std::vector<AtomId> negative);
  void rule(AtomId head, BodyId body);
  void rule(AtomId head, std::vector<AtomId> positive, std::vector<AtomId> negative = {});
  /// Convenience: atoms looked up (and created) by name.
  void rule(std::string_view head, std::initializer_list<std::string_view> positive,
            std::initializer_list<std::string_view> negative = {});

  std::size_t num_atoms() const { return program_.num_atoms(); }

  /// Finalises indexes, SCCs and classification.
  Program build() &&;

 private:
  Program program_;
  std::map<std::pair<AtomId, BodyId>, bool> seen_rules_;
};

/// Directed graph over atom and body nodes (see Program::atom_node).
struct DependencyGraph {
  std::size_t num_atoms = 0;
  std::vector<std::vector<NodeId>> successors;

  std::size_t num_nodes() const { return successors.size(); }
  bool has_edge(NodeId from, NodeId to) const;
};

Program parse_program(std::string_view text);
std::string to_text(const Program& p);

DependencyGraph dependency_graph(const Program& p);
/// Component id per node; ids are dense but otherwise arbitrary.
std::vector<std::uint32_t> scc_decompose(const DependencyGraph& g);
ProgramClass classify(const Program& p);

/// es(U, P), minus bodies false in `a` when an assignment is given.
/// Result sorted by body index.
std::vector<BodyId> external_support(const Program& p, std::span<const AtomId> u,
                                     const Assignment* a = nullptr);

}  // namespace wfprop
