#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wfprop/assignment.hpp"
#include "wfprop/program.hpp"

/// Brute-force reference implementations for small programs.
namespace wfprop::oracle {

class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Guards {
  std::size_t answer_set_atoms = 20;
  std::size_t scc_atoms = 15;
  /// Up to this many atoms, Omega = all ranges over every atom subset;
  /// above it, only over subsets of single components.
  std::size_t cross_scc_atoms = 12;
};

enum class Omega { All, Loops };

using AtomSet = std::vector<AtomId>;

/// Positive program: rules whose negative body avoids x, negative parts
/// dropped. Atom numbering is preserved.
Program reduct(const Program& p, const AtomSet& x);
/// Least model of a positive program. Throws std::invalid_argument
/// on a rule with a negative literal.
AtomSet least_model(const Program& p);
/// Every x with least_model(reduct(p, x)) == x, each sorted, in
/// lexicographic order.
std::vector<AtomSet> enumerate_answer_sets(const Program& p, const Guards& g = {});
/// Non-empty atom sets whose induced positive dependency subgraph is
/// strongly connected (a singleton needs a self path through one body).
std::vector<AtomSet> enumerate_loops(const Program& p, const Guards& g = {});

/// The candidate sets U for a given Omega.
std::vector<AtomSet> omega_sets(const Program& p, Omega omega, const Guards& g = {});

/// One-step operators over every U in Omega, regardless of which literals
/// are already assigned.
/// wfn: Fp for p in some U with es(U) \ A^F empty.
std::set<Literal> wfn(const Program& p, const Assignment& a, Omega omega, const Guards& g = {});
/// wfj: T(beta) when some U meeting A^T has es(U) \ A^F = {beta}.
std::set<Literal> wfj(const Program& p, const Assignment& a, Omega omega, const Guards& g = {});
/// wfd: Tq when some U meeting A^T, q not in U, has a non-empty
/// es(U) \ A^F in which every body contains q positively.
std::set<Literal> wfd(const Program& p, const Assignment& a, Omega omega, const Guards& g = {});

/// T(beta) for every unassigned body whose falsification fails under UP+FL.
/// The assignment must be conflict-free; it is not modified.
std::set<Literal> failed_literal_bl(const Program& p, const Assignment& a);

}  // namespace wfprop::oracle
