#include "wfprop/assignment.hpp"

#include <algorithm>
#include <stdexcept>

namespace wfprop {

std::string_view to_string(Source s) {
  switch (s) {
    case Source::Decision: return "assume";
    case Source::Nogood: return "up";
    case Source::Unfounded: return "fl";
    case Source::Dominator: return "dom";
    case Source::Probe: return "blprobe";
  }
  return "?";
}

Assignment::Assignment(std::size_t num_atoms, std::size_t num_bodies)
    : num_atoms_(num_atoms),
      values_(num_atoms + num_bodies, Value::Free),
      level_(num_atoms + num_bodies, 0),
      reason_(num_atoms + num_bodies) {}

bool Assignment::assign(Literal l, Reason r) {
  Value& v = values_[l.var()];
  const Value want = l.positive() ? Value::True : Value::False;
  if (v == want) return true;
  if (v != Value::Free) return false;
  v = want;
  level_[l.var()] = level();
  reason_[l.var()] = r;
  trail_.push_back(l);
  return true;
}

void Assignment::assume(Literal l) {
  if (!is_free(l.var())) throw std::logic_error("assume: variable already assigned");
  marks_.push_back(trail_.size());
  assign(l, Reason{Source::Decision, 0});
}

void Assignment::backtrack(std::uint32_t target) {
  if (target >= level()) return;
  const std::size_t keep = marks_[target];
  while (trail_.size() > keep) {
    Var v = trail_.back().var();
    values_[v] = Value::Free;
    level_[v] = 0;
    reason_[v] = Reason{};
    trail_.pop_back();
  }
  marks_.resize(target);
  if (propagated_ > keep) propagated_ = keep;
}

std::string var_name(const Program& p, Var v) {
  if (v < p.num_atoms()) return p.atom_name(v);
  return p.body_text(static_cast<BodyId>(v - p.num_atoms()));
}

std::string literal_text(const Program& p, Literal l) {
  return (l.positive() ? "T" : "F") + var_name(p, l.var());
}

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != ' ' && c != '\t') out += c;
  return out;
}

}  // namespace

Literal parse_literal(const Program& p, std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("literal needs t: or f: prefix: " + std::string(text));
  auto sign = text.substr(0, colon);
  bool positive;
  if (sign == "t" || sign == "T") {
    positive = true;
  } else if (sign == "f" || sign == "F") {
    positive = false;
  } else {
    throw std::invalid_argument("bad literal sign: " + std::string(text));
  }
  std::string_view ref = text.substr(colon + 1);
  while (!ref.empty() && ref.front() == ' ') ref.remove_prefix(1);
  while (!ref.empty() && ref.back() == ' ') ref.remove_suffix(1);
  if (!ref.empty() && ref.front() == '{') {
    if (ref.back() != '}') throw std::invalid_argument("unterminated body: " + std::string(text));
    std::string_view inner = ref.substr(1, ref.size() - 2);
    Body b;
    std::size_t start = 0;
    int depth = 0;
    auto flush = [&](std::string_view item) {
      while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
      while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
      if (item.empty()) return;
      bool neg = item.starts_with("not ") || item.starts_with("not\t");
      if (neg) item.remove_prefix(4);
      auto a = p.find_atom(strip(item));
      if (!a) throw std::invalid_argument("unknown atom in body: " + std::string(item));
      (neg ? b.negative : b.positive).push_back(*a);
    };
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0) {
        flush(inner.substr(start, i - start));
        start = i + 1;
      }
    }
    flush(inner.substr(start));
    std::ranges::sort(b.positive);
    std::ranges::sort(b.negative);
    auto id = p.find_body(b);
    if (!id) throw std::invalid_argument("unknown body: " + std::string(ref));
    return Literal::make(static_cast<Var>(p.num_atoms() + *id), positive);
  }
  auto a = p.find_atom(strip(ref));
  if (!a) throw std::invalid_argument("unknown atom: " + std::string(ref));
  return Literal::make(*a, positive);
}

}  // namespace wfprop
