#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <string>
#include <vector>

#include "wfprop/assignment.hpp"
#include "wfprop/flowgraph.hpp"
#include "wfprop/nogoods.hpp"
#include "wfprop/program.hpp"
#include "wfprop/unfounded.hpp"

namespace wfprop {

enum class Heuristic { LowestIndex, SeededRandom };

struct SolverConfig {
  // UP is always on.
  bool fl = true;
  bool dom = false;
  bool blprobe = false;
  Heuristic heuristic = Heuristic::LowestIndex;
  std::uint64_t seed = 0;
  /// Maximum number of answer sets; 0 enumerates all.
  std::size_t enum_limit = 0;
  /// Wall-clock budget for solve(); zero means unlimited.
  std::chrono::milliseconds time_budget{0};
  /// Keep FL/DOM justifications for reason listings.
  bool explain = false;

  /// Throws std::invalid_argument when DOM is requested without FL.
  void validate() const;
  /// "up,fl,dom" style name.
  std::string name() const;
  /// Parses "up,fl,dom,blprobe" (up may be omitted, order free).
  static SolverConfig from_props(std::string_view props);
};

struct InferenceCounts {
  std::uint64_t up = 0;
  std::uint64_t fl = 0;
  std::uint64_t dom = 0;
  std::uint64_t blprobe = 0;
};

struct SolverStats {
  std::uint64_t branches = 0;   ///< decisions, flipped ones included
  std::uint64_t conflicts = 0;  ///< conflict outcomes, rejected models included
  std::chrono::milliseconds time{0};
  InferenceCounts inferences;
  std::size_t answer_sets = 0;
};

/// Justification kept for an FL or DOM literal (when explain is on).
struct Explanation {
  Source source = Source::Unfounded;
  /// FL: the unfounded set. DOM: the atoms dominated by `dominator`.
  std::vector<AtomId> atoms;
  /// DOM only: flowgraph node of the dominator (body or atom).
  std::uint32_t dominator = 0;
  /// DOM only: the true atom whose chain produced the literal.
  AtomId trigger = 0;
};

/// Assignment plus the configured propagator stack over one program.
///
/// Level 0 carries the consequences of the completion's unit nogoods; a
/// conflict there makes the program inconsistent (root_conflict()).
class Engine {
 public:
  Engine(const Program& p, SolverConfig config);

  const Program& program() const { return *program_; }
  const SolverConfig& config() const { return config_; }
  const Assignment& assignment() const { return assignment_; }
  const NogoodStore& nogoods() const { return store_; }
  const std::optional<Conflict>& root_conflict() const { return root_conflict_; }
  const InferenceCounts& inferences() const { return counts_; }
  const std::vector<Explanation>& explanations() const { return explanations_; }

  /// Round robin UP -> FL -> DOM -> BLPROBE over the enabled subset until
  /// no propagator adds a literal. DOM only runs at a UP+FL fixpoint.
  std::optional<Conflict> propagate();

  std::optional<Conflict> propagate_up();
  /// UP and FL to their joint fixpoint (FL even if disabled in config).
  std::optional<Conflict> propagate_up_fl();

  void assume(Literal l) { assignment_.assume(l); }
  /// Opens one level holding every literal of `ls` not yet true, then
  /// propagates. No level is opened when all are already true.
  std::optional<Conflict> assume_all(std::span<const Literal> ls);
  void backtrack(std::uint32_t level) { assignment_.backtrack(level); }
  std::uint32_t level() const { return assignment_.level(); }

  /// Bodies b (unassigned) for which assuming Fb and running UP+FL fails.
  /// The assignment is restored before returning.
  std::vector<BodyId> failed_bodies();

  /// Total, conflict-free, violating no nogood, unfounded-free.
  bool is_answer_set() const;

 private:
  std::optional<Conflict> run_fl(bool& changed);
  std::optional<Conflict> run_dom(bool& changed);
  std::optional<Conflict> run_probe(bool& changed);

  const Program* program_;
  SolverConfig config_;
  NogoodStore store_;
  Assignment assignment_;
  std::optional<Conflict> root_conflict_;
  InferenceCounts counts_;
  std::vector<Explanation> explanations_;
};

struct SolveResult {
  std::vector<std::vector<AtomId>> answer_sets;  ///< sorted atom ids
  SolverStats stats;
  bool complete = true;  ///< false when the time budget ran out
};

/// Chronological backtracking search. Assumptions are asserted together at
/// level 1 and never flipped.
SolveResult solve(const Program& p, const SolverConfig& config, std::span<const Literal> assumptions = {});

}  // namespace wfprop
