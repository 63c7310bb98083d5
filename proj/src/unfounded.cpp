#include "wfprop/unfounded.hpp"

#include <algorithm>
#include <map>

namespace wfprop {

std::vector<UnfoundedSet> greatest_unfounded_sets(const Program& p, const Assignment& a) {
  const std::size_t na = p.num_atoms(), nb = p.num_bodies();
  std::vector<bool> in_u(na, false);
  // Positive body atoms still in U and inside the body's own component.
  std::vector<std::uint32_t> pending(nb, 0);
  std::vector<AtomId> sourced;

  for (AtomId x = 0; x < na; ++x) in_u[x] = !a.atom_false(x);
  for (BodyId b = 0; b < nb; ++b) {
    for (AtomId q : p.body(b).positive)
      if (in_u[q] && p.scc_of_atom(q) == p.scc_of_body(b)) ++pending[b];
  }
  auto supports = [&](AtomId h, BodyId b) {
    return !a.body_false(b) && (!p.is_internal(h, b) || pending[b] == 0);
  };
  for (AtomId x = 0; x < na; ++x) {
    if (!in_u[x]) continue;
    for (BodyId b : p.bodies_of(x)) {
      if (supports(x, b)) {
        in_u[x] = false;
        sourced.push_back(x);
        break;
      }
    }
  }
  while (!sourced.empty()) {
    AtomId q = sourced.back();
    sourced.pop_back();
    for (BodyId b : p.positive_occurrences(q)) {
      if (p.scc_of_atom(q) != p.scc_of_body(b)) continue;
      if (--pending[b] != 0 || a.body_false(b)) continue;
      for (AtomId h : p.heads_of(b)) {
        if (in_u[h] && p.is_internal(h, b)) {
          in_u[h] = false;
          sourced.push_back(h);
        }
      }
    }
  }

  std::map<std::uint32_t, std::vector<AtomId>> by_scc;
  for (AtomId x = 0; x < na; ++x)
    if (in_u[x]) by_scc[p.scc_of_atom(x)].push_back(x);
  std::vector<UnfoundedSet> out;
  for (auto& [scc, atoms] : by_scc) out.push_back({std::move(atoms), scc});
  return out;
}

std::vector<AtomId> greatest_unfounded_set(const Program& p, const Assignment& a) {
  const std::size_t na = p.num_atoms(), nb = p.num_bodies();
  std::vector<bool> derived(na, false);
  std::vector<std::uint32_t> missing(nb, 0);
  std::vector<AtomId> queue;
  auto fire = [&](BodyId b) {
    for (AtomId h : p.heads_of(b)) {
      if (!derived[h]) {
        derived[h] = true;
        queue.push_back(h);
      }
    }
  };
  for (BodyId b = 0; b < nb; ++b) {
    missing[b] = static_cast<std::uint32_t>(p.body(b).positive.size());
    if (missing[b] == 0 && !a.body_false(b)) fire(b);
  }
  while (!queue.empty()) {
    AtomId q = queue.back();
    queue.pop_back();
    for (BodyId b : p.positive_occurrences(q))
      if (--missing[b] == 0 && !a.body_false(b)) fire(b);
  }
  std::vector<AtomId> out;
  for (AtomId x = 0; x < na; ++x)
    if (!derived[x] && !a.atom_false(x)) out.push_back(x);
  return out;
}

std::optional<Conflict> forward_loop(const Program& p, Assignment& a, std::vector<UnfoundedSet>* log) {
  for (auto& set : greatest_unfounded_sets(p, a)) {
    std::vector<Literal> culprits;
    for (AtomId x : set.atoms)
      if (a.atom_true(x)) culprits.push_back(Literal::true_of(x));
    if (!culprits.empty()) return Conflict{Source::Unfounded, std::move(culprits)};
    std::uint32_t index = 0;
    if (log) {
      index = static_cast<std::uint32_t>(log->size());
      log->push_back(set);
    }
    for (AtomId x : set.atoms) a.assign(Literal::false_of(x), Reason{Source::Unfounded, index});
  }
  return std::nullopt;
}

std::optional<Conflict> forward_loop_fixpoint(const Program& p, NogoodStore& store, Assignment& a) {
  for (;;) {
    if (auto c = store.propagate(a)) return c;
    const std::size_t before = a.num_assigned();
    if (auto c = forward_loop(p, a)) return c;
    if (a.num_assigned() == before) return std::nullopt;
  }
}

}  // namespace wfprop
