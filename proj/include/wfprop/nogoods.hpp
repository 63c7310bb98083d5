#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wfprop/assignment.hpp"
#include "wfprop/program.hpp"

namespace wfprop {

/// Why propagation stopped short of a fixpoint.
struct Conflict {
  Source source = Source::Nogood;
  /// Violated nogood for UP; the unfounded atoms (as T literals) for FL;
  /// the rejected consequence and its trigger for DOM.
  std::vector<Literal> literals;
};

/// Completion nogoods with a two-watched-literal index.
///
/// A nogood is violated when all its literals are true. Nogoods containing
/// complementary literals are dropped at construction; duplicate literals
/// are merged.
class NogoodStore {
 public:
  NogoodStore() = default;

  void add(std::vector<Literal> nogood);

  std::size_t size() const { return nogoods_.size(); }
  std::span<const Literal> nogood(std::size_t i) const { return nogoods_[i]; }

  /// Asserts unit nogoods at the current level. Call once on a fresh
  /// assignment before propagate().
  std::optional<Conflict> initialize(Assignment& a) const;

  /// Unit propagation to fixpoint over the unprocessed trail suffix.
  /// Returns the violated nogood on conflict.
  std::optional<Conflict> propagate(Assignment& a);

  /// First nogood contained in `a`, if any (full scan).
  std::optional<std::size_t> find_violated(const Assignment& a) const;

 private:
  void watch(std::size_t id);

  std::vector<std::vector<Literal>> nogoods_;
  std::vector<std::size_t> units_;
  /// Indexed by Literal::code(): nogoods currently watching that literal.
  std::vector<std::vector<std::uint32_t>> watches_;
};

/// Builds the completion nogoods of p: per body the "all members hold ->
/// body true" nogood and one "member fails -> body false" nogood per
/// member; per atom one "body true -> atom true" nogood per body and the
/// "all bodies false -> atom false" nogood ({Tp} for atoms without bodies).
NogoodStore completion_nogoods(const Program& p);

/// Unit propagation to fixpoint. Thin wrapper over NogoodStore::propagate.
std::optional<Conflict> unit_propagate(NogoodStore& store, Assignment& a);

}  // namespace wfprop
