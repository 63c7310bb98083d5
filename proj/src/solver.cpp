#include "wfprop/solver.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace wfprop {

void SolverConfig::validate() const {
  if (dom && !fl) throw std::invalid_argument("dom requires fl: dominator consequences need an unfounded-free assignment");
}

std::string SolverConfig::name() const {
  std::string out = "up";
  if (fl) out += ",fl";
  if (dom) out += ",dom";
  if (blprobe) out += ",blprobe";
  return out;
}

SolverConfig SolverConfig::from_props(std::string_view props) {
  SolverConfig c;
  c.fl = false;
  std::size_t start = 0;
  while (start <= props.size()) {
    std::size_t end = props.find(',', start);
    if (end == std::string_view::npos) end = props.size();
    std::string_view tok = props.substr(start, end - start);
    if (tok == "up" || tok.empty()) {
    } else if (tok == "fl") {
      c.fl = true;
    } else if (tok == "dom") {
      c.dom = true;
    } else if (tok == "blprobe") {
      c.blprobe = true;
    } else {
      throw std::invalid_argument("unknown propagator: " + std::string(tok));
    }
    start = end + 1;
  }
  c.validate();
  return c;
}

// ---------------------------------------------------------------------------
// Engine

Engine::Engine(const Program& p, SolverConfig config)
    : program_(&p), config_(config), store_(completion_nogoods(p)), assignment_(p) {
  config_.validate();
  root_conflict_ = store_.initialize(assignment_);
  counts_.up += assignment_.num_assigned();
}

std::optional<Conflict> Engine::propagate_up() {
  const std::size_t before = assignment_.num_assigned();
  auto c = store_.propagate(assignment_);
  counts_.up += assignment_.num_assigned() - before;
  return c;
}

std::optional<Conflict> Engine::propagate_up_fl() {
  for (;;) {
    if (auto c = store_.propagate(assignment_)) return c;
    const std::size_t before = assignment_.num_assigned();
    if (auto c = forward_loop(*program_, assignment_)) return c;
    if (assignment_.num_assigned() == before) return std::nullopt;
  }
}

std::optional<Conflict> Engine::run_fl(bool& changed) {
  for (auto& set : greatest_unfounded_sets(*program_, assignment_)) {
    std::vector<Literal> culprits;
    for (AtomId x : set.atoms)
      if (assignment_.atom_true(x)) culprits.push_back(Literal::true_of(x));
    if (!culprits.empty()) return Conflict{Source::Unfounded, std::move(culprits)};
    std::uint32_t index = 0;
    if (config_.explain) {
      index = static_cast<std::uint32_t>(explanations_.size());
      explanations_.push_back({Source::Unfounded, set.atoms, 0, 0});
    }
    for (AtomId x : set.atoms) assignment_.assign(Literal::false_of(x), Reason{Source::Unfounded, index});
    counts_.fl += set.atoms.size();
    changed = true;
  }
  return std::nullopt;
}

std::optional<Conflict> Engine::run_dom(bool& changed) {
  const SupportFlowgraph g = build_flowgraph(*program_, assignment_);
  const DominatorTree t = compute_dominators(g);
  DominatorResult r = dominator_consequences(*program_, assignment_, g, t);
  if (r.conflict) return r.conflict;
  for (const auto& c : r.consequences) {
    std::uint32_t index = 0;
    if (config_.explain) {
      index = static_cast<std::uint32_t>(explanations_.size());
      explanations_.push_back({Source::Dominator, dominated_atoms(g, t, c.dominator), c.dominator, c.trigger});
    }
    assignment_.assign(c.literal, Reason{Source::Dominator, index});
  }
  counts_.dom += r.consequences.size();
  changed = !r.consequences.empty();
  return std::nullopt;
}

std::vector<BodyId> Engine::failed_bodies() {
  std::vector<BodyId> failed;
  const std::uint32_t base = assignment_.level();
  for (BodyId b = 0; b < program_->num_bodies(); ++b) {
    const Var v = assignment_.body_var(b);
    if (!assignment_.is_free(v)) continue;
    assignment_.assume(Literal::false_of(v));
    const bool conflict = propagate_up_fl().has_value();
    assignment_.backtrack(base);
    if (conflict) failed.push_back(b);
  }
  return failed;
}

std::optional<Conflict> Engine::run_probe(bool& changed) {
  for (BodyId b : failed_bodies()) {
    assignment_.assign(Literal::true_of(assignment_.body_var(b)), Reason{Source::Probe, 0});
    ++counts_.blprobe;
    changed = true;
  }
  return std::nullopt;
}

std::optional<Conflict> Engine::propagate() {
  if (root_conflict_) return root_conflict_;
  for (;;) {
    if (auto c = propagate_up()) return c;
    bool changed = false;
    if (config_.fl) {
      if (auto c = run_fl(changed)) return c;
      if (changed) continue;
    }
    if (config_.dom) {
      if (auto c = run_dom(changed)) return c;
      if (changed) continue;
    }
    if (config_.blprobe) {
      if (auto c = run_probe(changed)) return c;
      if (changed) continue;
    }
    return std::nullopt;
  }
}

std::optional<Conflict> Engine::assume_all(std::span<const Literal> ls) {
  bool opened = false;
  for (Literal l : ls) {
    if (assignment_.is_true(l)) continue;
    if (assignment_.is_false(l)) return Conflict{Source::Decision, {l}};
    if (!opened) {
      assignment_.assume(l);
      opened = true;
    } else {
      assignment_.assign(l, Reason{Source::Decision, 0});
    }
  }
  return propagate();
}

bool Engine::is_answer_set() const {
  if (!assignment_.total()) return false;
  if (store_.find_violated(assignment_)) return false;
  return greatest_unfounded_set(*program_, assignment_).empty();
}

// ---------------------------------------------------------------------------
// Search

namespace {

class Search {
 public:
  Search(const Program& p, const SolverConfig& config) : engine_(p, config), rng_(config.seed) {}

  SolveResult run(std::span<const Literal> assumptions) {
    const auto start = std::chrono::steady_clock::now();
    const auto& config = engine_.config();
    SolveResult res;
    auto finish = [&] {
      res.stats.time = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
      res.stats.inferences = engine_.inferences();
      res.stats.answer_sets = res.answer_sets.size();
      return res;
    };

    auto conflict = engine_.propagate();
    if (!conflict && !assumptions.empty()) conflict = engine_.assume_all(assumptions);
    if (conflict) {
      ++res.stats.conflicts;
      return finish();
    }
    const std::uint32_t base = engine_.level();

    for (;;) {
      if (config.time_budget.count() > 0 && std::chrono::steady_clock::now() - start > config.time_budget) {
        res.complete = false;
        break;
      }
      if (conflict) {
        ++res.stats.conflicts;
        if (!flip(base, res.stats)) break;
        conflict = engine_.propagate();
        continue;
      }
      const Assignment& a = engine_.assignment();
      if (a.total()) {
        if (engine_.is_answer_set()) {
          std::vector<AtomId> model;
          for (AtomId x = 0; x < engine_.program().num_atoms(); ++x)
            if (a.atom_true(x)) model.push_back(x);
          res.answer_sets.push_back(std::move(model));
          if (config.enum_limit != 0 && res.answer_sets.size() >= config.enum_limit) break;
        } else {
          ++res.stats.conflicts;
        }
        if (!flip(base, res.stats)) break;
        conflict = engine_.propagate();
        continue;
      }
      const Literal d = choose();
      ++res.stats.branches;
      decisions_.push_back({d, false});
      engine_.assume(d);
      conflict = engine_.propagate();
    }
    return finish();
  }

 private:
  struct Decision {
    Literal literal;
    bool flipped;
  };

  bool flip(std::uint32_t base, SolverStats& stats) {
    while (!decisions_.empty()) {
      Decision d = decisions_.back();
      decisions_.pop_back();
      engine_.backtrack(base + static_cast<std::uint32_t>(decisions_.size()));
      if (!d.flipped) {
        decisions_.push_back({~d.literal, true});
        engine_.assume(~d.literal);
        ++stats.branches;
        return true;
      }
    }
    return false;
  }

  Literal choose() {
    const Assignment& a = engine_.assignment();
    const std::size_t na = engine_.program().num_atoms();
    if (engine_.config().heuristic == Heuristic::SeededRandom) {
      std::vector<Var> free;
      for (Var v = 0; v < a.num_vars(); ++v)
        if (a.is_free(v) && (v < na || free.empty())) free.push_back(v);
      std::vector<Var> atoms;
      std::ranges::copy_if(free, std::back_inserter(atoms), [&](Var v) { return v < na; });
      const auto& pool = atoms.empty() ? free : atoms;
      Var v = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng_)];
      return Literal::make(v, std::bernoulli_distribution(0.5)(rng_));
    }
    for (Var v = 0; v < a.num_vars(); ++v)
      if (a.is_free(v)) return Literal::true_of(v);
    throw std::logic_error("choose: assignment is total");
  }

  Engine engine_;
  std::mt19937_64 rng_;
  std::vector<Decision> decisions_;
};

}  // namespace

SolveResult solve(const Program& p, const SolverConfig& config, std::span<const Literal> assumptions) {
  return Search(p, config).run(assumptions);
}

}  // namespace wfprop
