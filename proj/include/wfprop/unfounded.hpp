#pragma once

#include <optional>
#include <vector>

#include "wfprop/assignment.hpp"
#include "wfprop/nogoods.hpp"
#include "wfprop/program.hpp"

namespace wfprop {

/// Atoms of an unfounded set, all from one strongly connected component.
struct UnfoundedSet {
  std::vector<AtomId> atoms;
  std::uint32_t scc = 0;
};

/// Greatest SCC-confined unfounded sets among the non-false atoms.
///
/// Per component C, starts from U = C minus A^F and removes every atom that
/// has a non-false body whose positive part avoids U (bodies from other
/// components always count as external). What remains, grouped by
/// component, is unfounded. Linear in the program size.
std::vector<UnfoundedSet> greatest_unfounded_sets(const Program& p, const Assignment& a);

/// Greatest unfounded set w.r.t. A^F without the SCC restriction: atoms
/// not derivable from non-false bodies. Used for the final model check.
std::vector<AtomId> greatest_unfounded_set(const Program& p, const Assignment& a);

/// One FL round: falsifies all atoms of greatest_unfounded_sets. Returns the
/// offending set when one of its atoms is already true. `log` receives one
/// entry per falsified set; literal reasons index into it.
std::optional<Conflict> forward_loop(const Program& p, Assignment& a, std::vector<UnfoundedSet>* log = nullptr);

/// UP and FL alternated until neither adds a literal.
std::optional<Conflict> forward_loop_fixpoint(const Program& p, NogoodStore& store, Assignment& a);

}  // namespace wfprop
