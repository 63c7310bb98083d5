#include "wfprop/oracle.hpp"

#include <algorithm>
#include <cstdint>

#include "wfprop/solver.hpp"

namespace wfprop::oracle {

namespace {

using Mask = std::uint64_t;

AtomSet atoms_of(Mask m, const std::vector<AtomId>& universe) {
  AtomSet out;
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (m >> i & 1u) out.push_back(universe[i]);
  return out;
}

std::vector<AtomId> all_atoms(const Program& p) {
  std::vector<AtomId> out(p.num_atoms());
  for (AtomId x = 0; x < p.num_atoms(); ++x) out[x] = x;
  return out;
}

/// Least model of the reduct of p by x, without building the reduct.
std::vector<bool> reduct_least_model(const Program& p, const std::vector<bool>& x) {
  std::vector<bool> model(p.num_atoms(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : p.rules()) {
      if (model[r.head]) continue;
      const Body& b = p.body(r.body);
      if (std::ranges::any_of(b.negative, [&](AtomId q) { return x[q]; })) continue;
      if (!std::ranges::all_of(b.positive, [&](AtomId q) { return model[q]; })) continue;
      model[r.head] = true;
      changed = true;
    }
  }
  return model;
}

/// Atom-level positive dependency: succ[p] holds q when p occurs positively
/// in a body of a rule with head q.
std::vector<std::vector<AtomId>> atom_graph(const Program& p) {
  std::vector<std::vector<AtomId>> succ(p.num_atoms());
  for (const Rule& r : p.rules())
    for (AtomId q : p.body(r.body).positive) succ[q].push_back(r.head);
  for (auto& s : succ) {
    std::ranges::sort(s);
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return succ;
}

bool strongly_connected(const AtomSet& u, const std::vector<std::vector<AtomId>>& succ, std::size_t n) {
  if (u.size() == 1) return std::ranges::find(succ[u[0]], u[0]) != succ[u[0]].end();
  auto reach_all = [&](bool reverse) {
    std::vector<bool> seen(n, false);
    std::vector<AtomId> stack{u[0]};
    seen[u[0]] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      AtomId x = stack.back();
      stack.pop_back();
      for (AtomId y : u) {
        if (seen[y]) continue;
        const AtomId from = reverse ? y : x, to = reverse ? x : y;
        if (std::ranges::find(succ[from], to) == succ[from].end()) continue;
        seen[y] = true;
        ++count;
        stack.push_back(y);
      }
    }
    return count == u.size();
  };
  return reach_all(false) && reach_all(true);
}

std::vector<AtomSet> subsets_per_scc(const Program& p, const Guards& g) {
  std::vector<AtomSet> out;
  for (std::uint32_t c = 0; c < p.num_sccs(); ++c) {
    std::vector<AtomId> members(p.scc_atoms(c).begin(), p.scc_atoms(c).end());
    if (members.empty()) continue;
    if (members.size() > g.scc_atoms)
      throw GuardExceeded("component with " + std::to_string(members.size()) + " atoms exceeds the guard of " +
                          std::to_string(g.scc_atoms));
    for (Mask m = 1; m < (Mask{1} << members.size()); ++m) out.push_back(atoms_of(m, members));
  }
  return out;
}

/// es(U) \ A^F.
std::vector<BodyId> open_support(const Program& p, const Assignment& a, const AtomSet& u) {
  return external_support(p, u, &a);
}

bool meets_true(const Assignment& a, const AtomSet& u) {
  return std::ranges::any_of(u, [&](AtomId x) { return a.atom_true(x); });
}

}  // namespace

Program reduct(const Program& p, const AtomSet& x) {
  std::vector<bool> in(p.num_atoms(), false);
  for (AtomId q : x) in[q] = true;
  ProgramBuilder b;
  for (AtomId q = 0; q < p.num_atoms(); ++q) b.atom(p.atom_name(q));
  for (const Rule& r : p.rules()) {
    const Body& body = p.body(r.body);
    if (std::ranges::any_of(body.negative, [&](AtomId q) { return in[q]; })) continue;
    b.rule(r.head, body.positive, {});
  }
  return std::move(b).build();
}

AtomSet least_model(const Program& p) {
  for (BodyId b = 0; b < p.num_bodies(); ++b)
    if (!p.body(b).negative.empty()) throw std::invalid_argument("least_model: program has negative body literals");
  const auto model = reduct_least_model(p, std::vector<bool>(p.num_atoms(), false));
  AtomSet out;
  for (AtomId x = 0; x < p.num_atoms(); ++x)
    if (model[x]) out.push_back(x);
  return out;
}

std::vector<AtomSet> enumerate_answer_sets(const Program& p, const Guards& g) {
  const std::size_t n = p.num_atoms();
  if (n > g.answer_set_atoms)
    throw GuardExceeded(std::to_string(n) + " atoms exceed the answer set guard of " +
                        std::to_string(g.answer_set_atoms));
  std::vector<AtomSet> out;
  std::vector<bool> x(n);
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    for (std::size_t i = 0; i < n; ++i) x[i] = m >> i & 1u;
    if (reduct_least_model(p, x) == x) out.push_back(atoms_of(m, all_atoms(p)));
  }
  std::ranges::sort(out);
  return out;
}

std::vector<AtomSet> enumerate_loops(const Program& p, const Guards& g) {
  const auto succ = atom_graph(p);
  std::vector<AtomSet> out;
  for (auto& u : subsets_per_scc(p, g))
    if (strongly_connected(u, succ, p.num_atoms())) out.push_back(std::move(u));
  std::ranges::sort(out);
  return out;
}

std::vector<AtomSet> omega_sets(const Program& p, Omega omega, const Guards& g) {
  if (omega == Omega::Loops) return enumerate_loops(p, g);
  const std::size_t n = p.num_atoms();
  if (n <= g.cross_scc_atoms) {
    std::vector<AtomSet> out;
    const auto universe = all_atoms(p);
    for (Mask m = 1; m < (Mask{1} << n); ++m) out.push_back(atoms_of(m, universe));
    return out;
  }
  return subsets_per_scc(p, g);
}

std::set<Literal> wfn(const Program& p, const Assignment& a, Omega omega, const Guards& g) {
  std::set<Literal> out;
  for (const auto& u : omega_sets(p, omega, g))
    if (open_support(p, a, u).empty())
      for (AtomId x : u) out.insert(Literal::false_of(a.atom_var(x)));
  return out;
}

std::set<Literal> wfj(const Program& p, const Assignment& a, Omega omega, const Guards& g) {
  std::set<Literal> out;
  for (const auto& u : omega_sets(p, omega, g)) {
    if (!meets_true(a, u)) continue;
    const auto es = open_support(p, a, u);
    if (es.size() == 1) out.insert(Literal::true_of(a.body_var(es[0])));
  }
  return out;
}

std::set<Literal> wfd(const Program& p, const Assignment& a, Omega omega, const Guards& g) {
  std::set<Literal> out;
  for (const auto& u : omega_sets(p, omega, g)) {
    if (!meets_true(a, u)) continue;
    const auto es = open_support(p, a, u);
    if (es.empty()) continue;
    // Atoms common to the positive parts of every open external body.
    std::vector<AtomId> common = p.body(es[0]).positive;
    for (std::size_t i = 1; i < es.size() && !common.empty(); ++i) {
      std::vector<AtomId> next;
      std::ranges::set_intersection(common, p.body(es[i]).positive, std::back_inserter(next));
      common = std::move(next);
    }
    for (AtomId q : common)
      if (!std::ranges::binary_search(u, q)) out.insert(Literal::true_of(a.atom_var(q)));
  }
  return out;
}

std::set<Literal> failed_literal_bl(const Program& p, const Assignment& a) {
  SolverConfig config;
  config.fl = true;
  Engine e(p, config);
  if (e.root_conflict() || e.propagate_up_fl()) throw std::invalid_argument("failed_literal_bl: program has no answer set");
  for (Literal l : a.trail())
    if (e.assignment().is_false(l)) throw std::invalid_argument("failed_literal_bl: assignment clashes with the program");
  const std::vector<Literal> literals = a.literals();
  if (e.assume_all(literals)) throw std::invalid_argument("failed_literal_bl: assignment propagates to a conflict");
  std::set<Literal> out;
  for (BodyId b : e.failed_bodies()) out.insert(Literal::true_of(a.body_var(b)));
  return out;
}

}  // namespace wfprop::oracle
