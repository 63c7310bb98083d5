#include "wfprop/nogoods.hpp"

#include <algorithm>
#include <stdexcept>

namespace wfprop {

void NogoodStore::add(std::vector<Literal> nogood) {
  std::ranges::sort(nogood);
  nogood.erase(std::unique(nogood.begin(), nogood.end()), nogood.end());
  if (nogood.empty()) throw std::invalid_argument("empty nogood");
  for (std::size_t i = 1; i < nogood.size(); ++i)
    if (nogood[i].var() == nogood[i - 1].var()) return;  // Tx and Fx: never violated
  const std::uint32_t max_code = std::ranges::max(nogood, {}, &Literal::code).code();
  if (watches_.size() < max_code + 2) watches_.resize(max_code + 2);
  const std::size_t id = nogoods_.size();
  nogoods_.push_back(std::move(nogood));
  if (nogoods_.back().size() == 1) {
    units_.push_back(id);
  } else {
    watch(id);
  }
}

void NogoodStore::watch(std::size_t id) {
  const auto& ng = nogoods_[id];
  watches_[ng[0].code()].push_back(static_cast<std::uint32_t>(id));
  watches_[ng[1].code()].push_back(static_cast<std::uint32_t>(id));
}

std::optional<Conflict> NogoodStore::initialize(Assignment& a) const {
  for (std::size_t id : units_) {
    Literal l = nogoods_[id].front();
    if (!a.assign(~l, Reason{Source::Nogood, static_cast<std::uint32_t>(id)}))
      return Conflict{Source::Nogood, nogoods_[id]};
  }
  return std::nullopt;
}

std::optional<Conflict> NogoodStore::propagate(Assignment& a) {
  std::size_t head = a.propagated();
  while (head < a.num_assigned()) {
    const Literal l = a.trail()[head++];
    if (l.code() >= watches_.size()) continue;
    auto& ws = watches_[l.code()];
    std::size_t keep = 0;
    for (std::size_t i = 0; i < ws.size(); ++i) {
      const std::uint32_t id = ws[i];
      auto& ng = nogoods_[id];
      if (ng[0] == l) std::swap(ng[0], ng[1]);
      // ng[1] == l is now true; look for a replacement that is not true.
      bool moved = false;
      for (std::size_t k = 2; k < ng.size(); ++k) {
        if (!a.is_true(ng[k])) {
          std::swap(ng[1], ng[k]);
          watches_[ng[1].code()].push_back(id);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[keep++] = id;
      const Literal other = ng[0];
      if (a.is_false(other)) continue;
      if (a.is_true(other)) {
        for (++i; i < ws.size(); ++i) ws[keep++] = ws[i];
        ws.resize(keep);
        a.set_propagated(head);
        return Conflict{Source::Nogood, ng};
      }
      a.assign(~other, Reason{Source::Nogood, id});
    }
    ws.resize(keep);
  }
  a.set_propagated(head);
  return std::nullopt;
}

std::optional<std::size_t> NogoodStore::find_violated(const Assignment& a) const {
  for (std::size_t id = 0; id < nogoods_.size(); ++id) {
    const auto& ng = nogoods_[id];
    if (std::ranges::all_of(ng, [&](Literal l) { return a.is_true(l); })) return id;
  }
  return std::nullopt;
}

NogoodStore completion_nogoods(const Program& p) {
  NogoodStore store;
  auto atom_var = [](AtomId x) { return static_cast<Var>(x); };
  auto body_var = [&](BodyId b) { return static_cast<Var>(p.num_atoms() + b); };

  for (BodyId b = 0; b < p.num_bodies(); ++b) {
    const Body& body = p.body(b);
    const Var bv = body_var(b);
    std::vector<Literal> all;
    for (AtomId x : body.positive) all.push_back(Literal::true_of(atom_var(x)));
    for (AtomId x : body.negative) all.push_back(Literal::false_of(atom_var(x)));
    all.push_back(Literal::false_of(bv));
    store.add(std::move(all));
    for (AtomId x : body.positive) store.add({Literal::false_of(atom_var(x)), Literal::true_of(bv)});
    for (AtomId x : body.negative) store.add({Literal::true_of(atom_var(x)), Literal::true_of(bv)});
  }
  for (AtomId x = 0; x < p.num_atoms(); ++x) {
    std::vector<Literal> none{Literal::true_of(atom_var(x))};
    for (BodyId b : p.bodies_of(x)) {
      store.add({Literal::true_of(body_var(b)), Literal::false_of(atom_var(x))});
      none.push_back(Literal::false_of(body_var(b)));
    }
    store.add(std::move(none));
  }
  return store;
}

std::optional<Conflict> unit_propagate(NogoodStore& store, Assignment& a) { return store.propagate(a); }

}  // namespace wfprop
