#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wfprop/assignment.hpp"
#include "wfprop/program.hpp"
#include "wfprop/solver.hpp"

/// reachable(G, S, N) over a graph variable G and node set variables S, N.
namespace wfprop::reach {

/// In: lower bound member. Maybe: upper bound only. Out: outside the upper bound.
enum class Membership : std::uint8_t { In, Out, Maybe };

struct Edge {
  std::uint32_t from;
  std::uint32_t to;
  Membership membership;  ///< In or Maybe; absent edges are Out
};

struct ReachInstance {
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  std::vector<Membership> start;    ///< per node
  std::vector<Membership> reached;  ///< per node
  bool single_successor = false;    ///< every node keeps at most one out edge

  std::size_t num_nodes() const { return labels.size(); }
  /// Throws std::invalid_argument on out-of-range or duplicate edges.
  void validate() const;
};

/// Flat text format:
///   nodes 3 s u v       (labels optional; default n0, n1, ...)
///   edge s u maybe
///   start s in
///   reached v out
///   outdegree 1         (optional: single_successor)
/// Unlisted edges are Out, unlisted start and reached entries Maybe.
ReachInstance parse_instance(std::string_view text);
std::string to_text(const ReachInstance& inst);

struct Encoding {
  Program program;
  std::vector<Literal> assumptions;  ///< fixed reached values
  std::vector<AtomId> reached;       ///< per node
  std::vector<std::optional<AtomId>> start;  ///< per node, empty outside ub(S)
  std::vector<AtomId> edge;          ///< per instance edge
  std::optional<AtomId> branch;      ///< assumed false under single_successor
};

/// reached(x) :- start(x) for x in ub(S); reached(x) :- reached(y), edge(y,x)
/// for (y,x) in ub(G). Lower bound members become facts, undetermined ones
/// get an even loop with nstart/nedge. Under single_successor,
/// branch :- edge(y,x), edge(y,z) for each pair of out edges, and branch is
/// assumed false.
Encoding encode_reach(const ReachInstance& inst);

enum class FixMode { GS, N, None };

/// Draws a witness completion first and fixes values from it, so every
/// instance is satisfiable. GS fixes G and S, N fixes reached; any other
/// value is fixed with probability fixed_fraction.
ReachInstance random_instance(std::uint64_t seed, std::size_t n_nodes, double edge_density, double fixed_fraction,
                              FixMode mode);

/// Satisfiable route instance for benchmarking: single_successor, S = {n0},
/// every edge of a random upper bound undetermined, each reached value fixed
/// with probability 1/2 from a witness that keeps one random out edge per node.
ReachInstance search_instance(std::uint64_t seed, std::size_t n_nodes = 16, double edge_density = 0.2);

enum class Verdict { Consistent, MissedPruning, UnsoundPruning };
std::string_view to_string(Verdict v);

struct DCEntry {
  std::string variable;  ///< "edge(s,u)", "start(s)", "reached(v)"
  bool value;            ///< membership value under test
  bool supported;        ///< some satisfying completion has it
  bool pruned;           ///< false at the propagation fixpoint
  Verdict verdict;
};

struct DCReport {
  std::string config;
  bool conflict = false;  ///< propagation failed at the root
  std::vector<DCEntry> entries;
  std::size_t consistent = 0;
  std::size_t missed_pruning = 0;
  std::size_t unsound_pruning = 0;
  bool domain_consistent() const { return missed_pruning == 0 && unsound_pruning == 0; }
};

/// Compares the propagation fixpoint under `config` with supports found by
/// enumerating every completion of the undetermined edges and starts.
DCReport check_domain_consistency(const ReachInstance& inst, const SolverConfig& config, std::size_t max_nodes = 8);

/// The three node loop: S = {s}; (u,v), (v,u) in G; (s,u) undetermined;
/// N = {s,u,v}.
ReachInstance loop_witness();

}  // namespace wfprop::reach
