#include "wfprop/generators.hpp"

#include <string>

#include "wfprop/solver.hpp"

namespace wfprop::gen {

namespace {

Program draw(std::mt19937_64& rng, const ProgramShape& shape, bool unary) {
  ProgramBuilder b;
  for (std::size_t i = 0; i < shape.atoms; ++i) b.atom("x" + std::to_string(i));
  std::uniform_int_distribution<AtomId> atom(0, static_cast<AtomId>(shape.atoms - 1));
  std::uniform_int_distribution<std::size_t> size(0, shape.max_body);
  std::bernoulli_distribution negated(shape.negative);
  for (std::size_t r = 0; r < shape.rules; ++r) {
    std::vector<AtomId> pos, neg;
    const std::size_t n = size(rng);
    for (std::size_t i = 0; i < n; ++i) {
      const AtomId q = atom(rng);
      if (negated(rng) || (unary && !pos.empty()))
        neg.push_back(q);
      else
        pos.push_back(q);
    }
    b.rule(atom(rng), std::move(pos), std::move(neg));
  }
  return std::move(b).build();
}

}  // namespace

Program random_program(std::mt19937_64& rng, const ProgramShape& shape) {
  if (shape.atoms == 0) return ProgramBuilder{}.build();
  switch (shape.target) {
    case ProgramClass::General: return draw(rng, shape, false);
    case ProgramClass::Unary: return draw(rng, shape, true);
    case ProgramClass::ComponentUnary:
      for (int attempt = 0; attempt < 1000; ++attempt) {
        Program p = draw(rng, shape, false);
        if (p.classification() != ProgramClass::General) return p;
      }
      return draw(rng, shape, true);
  }
  return draw(rng, shape, false);
}

std::optional<Assignment> random_closed_assignment(std::mt19937_64& rng, const Program& p, std::size_t max_choices) {
  SolverConfig config;
  config.fl = true;
  Engine e(p, config);
  if (e.root_conflict() || e.propagate()) return std::nullopt;
  const std::size_t choices = std::uniform_int_distribution<std::size_t>(0, max_choices)(rng);
  for (std::size_t i = 0; i < choices; ++i) {
    std::vector<Var> free;
    for (Var v = 0; v < e.assignment().num_vars(); ++v)
      if (e.assignment().is_free(v)) free.push_back(v);
    if (free.empty()) break;
    const Var v = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
    e.assume(Literal::make(v, std::bernoulli_distribution(0.5)(rng)));
    if (e.propagate()) e.backtrack(e.level() - 1);
  }
  return e.assignment();
}

}  // namespace wfprop::gen
