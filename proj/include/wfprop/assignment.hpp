#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wfprop/program.hpp"

namespace wfprop {

/// Variable index: atoms occupy [0, num_atoms), bodies follow (same layout
/// as dependency graph nodes).
using Var = std::uint32_t;

/// Signed variable: Tx when positive, Fx otherwise.
class Literal {
 public:
  constexpr Literal() = default;
  static constexpr Literal make(Var v, bool positive) { return Literal((v << 1) | (positive ? 0u : 1u)); }
  static constexpr Literal true_of(Var v) { return make(v, true); }
  static constexpr Literal false_of(Var v) { return make(v, false); }
  static constexpr Literal from_code(std::uint32_t code) { return Literal(code); }

  constexpr Var var() const { return code_ >> 1; }
  constexpr bool positive() const { return (code_ & 1u) == 0; }
  constexpr std::uint32_t code() const { return code_; }
  constexpr Literal operator~() const { return Literal(code_ ^ 1u); }

  friend constexpr bool operator==(Literal, Literal) = default;
  friend constexpr auto operator<=>(Literal, Literal) = default;

 private:
  explicit constexpr Literal(std::uint32_t code) : code_(code) {}
  std::uint32_t code_ = 0;
};

enum class Value : std::uint8_t { Free, True, False };

/// Which propagator put a literal on the trail.
enum class Source : std::uint8_t { Decision, Nogood, Unfounded, Dominator, Probe };

std::string_view to_string(Source s);

struct Reason {
  Source source = Source::Decision;
  /// Nogood index, or index into the engine's explanation log.
  std::uint32_t index = 0;
};

/// Trail-based partial assignment over atom and body variables.
///
/// Conflict-free by construction: assign() refuses a literal whose
/// complement is already present. Levels are opened by assume(); level 0
/// holds everything derived without assumptions.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::size_t num_atoms, std::size_t num_bodies);
  explicit Assignment(const Program& p) : Assignment(p.num_atoms(), p.num_bodies()) {}

  std::size_t num_vars() const { return values_.size(); }
  std::size_t num_atoms() const { return num_atoms_; }
  Var atom_var(AtomId a) const { return a; }
  Var body_var(BodyId b) const { return static_cast<Var>(num_atoms_ + b); }
  bool is_atom(Var v) const { return v < num_atoms_; }

  Value value(Var v) const { return values_[v]; }
  bool is_free(Var v) const { return values_[v] == Value::Free; }
  bool is_true(Literal l) const {
    return values_[l.var()] == (l.positive() ? Value::True : Value::False);
  }
  bool is_false(Literal l) const { return is_true(~l); }
  bool atom_true(AtomId a) const { return values_[a] == Value::True; }
  bool atom_false(AtomId a) const { return values_[a] == Value::False; }
  bool body_true(BodyId b) const { return values_[body_var(b)] == Value::True; }
  bool body_false(BodyId b) const { return values_[body_var(b)] == Value::False; }

  /// Adds l at the current level. Returns false (and changes nothing) when
  /// ~l is already assigned; assigning an already-true literal is a no-op.
  bool assign(Literal l, Reason r);
  /// Opens a new decision level holding l. Throws std::logic_error when
  /// var(l) is already assigned.
  void assume(Literal l);
  /// Undoes every level above `level`.
  void backtrack(std::uint32_t level);

  std::uint32_t level() const { return static_cast<std::uint32_t>(marks_.size()); }
  std::uint32_t level_of(Var v) const { return level_[v]; }
  const Reason& reason(Var v) const { return reason_[v]; }
  std::span<const Literal> trail() const { return trail_; }
  /// Trail position where `level` starts (level >= 1).
  std::size_t level_start(std::uint32_t level) const { return marks_[level - 1]; }
  std::size_t num_assigned() const { return trail_.size(); }
  bool total() const { return trail_.size() == values_.size(); }

  /// Trail prefix already processed by unit propagation.
  std::size_t propagated() const { return propagated_; }
  void set_propagated(std::size_t n) { propagated_ = n; }

  std::vector<Literal> literals() const { return {trail_.begin(), trail_.end()}; }

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.values_ == b.values_ && a.trail_ == b.trail_ && a.marks_ == b.marks_;
  }

 private:
  std::size_t num_atoms_ = 0;
  std::vector<Value> values_;
  std::vector<std::uint32_t> level_;
  std::vector<Reason> reason_;
  std::vector<Literal> trail_;
  std::vector<std::size_t> marks_;
  std::size_t propagated_ = 0;
};

/// Human-readable rendering: "a", "{b,not c}", prefixed with T/F.
std::string var_name(const Program& p, Var v);
std::string literal_text(const Program& p, Literal l);

/// Parses "t:atom", "f:atom", "t:{b1,not b2}". Throws std::invalid_argument.
Literal parse_literal(const Program& p, std::string_view text);

}  // namespace wfprop
