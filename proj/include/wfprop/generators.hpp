#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "wfprop/assignment.hpp"
#include "wfprop/program.hpp"

/// Seeded random programs and assignments for property tests.
namespace wfprop::gen {

struct ProgramShape {
  std::size_t atoms = 8;
  std::size_t rules = 12;
  std::size_t max_body = 3;  ///< literals per body
  double negative = 0.35;    ///< probability a body literal is negated
  ProgramClass target = ProgramClass::General;
};

/// Atoms are named x0, x1, ... Unary programs never have two positive body
/// atoms; component-unary ones are drawn by rejection. Every atom exists
/// even when it heads no rule.
Program random_program(std::mt19937_64& rng, const ProgramShape& shape);

/// A conflict-free UP+FL fixpoint reached by asserting up to `max_choices`
/// random literals. Empty when the program is inconsistent at the root.
std::optional<Assignment> random_closed_assignment(std::mt19937_64& rng, const Program& p, std::size_t max_choices);

}  // namespace wfprop::gen
