#include "wfprop/program.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "wfprop/assignment.hpp"

namespace wfprop {

std::string_view to_string(ProgramClass c) {
  switch (c) {
    case ProgramClass::Unary: return "unary";
    case ProgramClass::ComponentUnary: return "component-unary";
    case ProgramClass::General: return "general";
  }
  return "?";
}

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

std::optional<AtomId> Program::find_atom(std::string_view name) const {
  auto it = atom_index_.find(std::string(name));
  if (it == atom_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<BodyId> Program::find_body(const Body& b) const {
  auto it = body_index_.find(b);
  if (it == body_index_.end()) return std::nullopt;
  return it->second;
}

std::string Program::body_text(BodyId b) const {
  std::string out = "{";
  bool first = true;
  for (AtomId a : bodies_[b].positive) {
    if (!first) out += ',';
    out += atom_names_[a];
    first = false;
  }
  for (AtomId a : bodies_[b].negative) {
    if (!first) out += ',';
    out += "not ";
    out += atom_names_[a];
    first = false;
  }
  out += '}';
  return out;
}

// ---------------------------------------------------------------------------
// ProgramBuilder

AtomId ProgramBuilder::atom(std::string_view name) {
  auto& p = program_;
  auto [it, inserted] = p.atom_index_.try_emplace(std::string(name), static_cast<AtomId>(p.atom_names_.size()));
  if (inserted) p.atom_names_.emplace_back(name);
  return it->second;
}

BodyId ProgramBuilder::body(std::vector<AtomId> positive, std::vector<AtomId> negative) {
  std::ranges::sort(positive);
  positive.erase(std::unique(positive.begin(), positive.end()), positive.end());
  std::ranges::sort(negative);
  negative.erase(std::unique(negative.begin(), negative.end()), negative.end());
  Body b{std::move(positive), std::move(negative)};
  auto& p = program_;
  auto it = p.body_index_.find(b);
  if (it != p.body_index_.end()) return it->second;
  auto id = static_cast<BodyId>(p.bodies_.size());
  p.body_index_.emplace(b, id);
  p.bodies_.push_back(std::move(b));
  return id;
}

void ProgramBuilder::rule(AtomId head, BodyId b) {
  if (seen_rules_.emplace(std::pair{head, b}, true).second) program_.rules_.push_back({head, b});
}

void ProgramBuilder::rule(AtomId head, std::vector<AtomId> positive, std::vector<AtomId> negative) {
  rule(head, body(std::move(positive), std::move(negative)));
}

void ProgramBuilder::rule(std::string_view head, std::initializer_list<std::string_view> positive,
                          std::initializer_list<std::string_view> negative) {
  AtomId h = atom(head);
  std::vector<AtomId> pos, neg;
  for (auto n : positive) pos.push_back(atom(n));
  for (auto n : negative) neg.push_back(atom(n));
  rule(h, std::move(pos), std::move(neg));
}

Program ProgramBuilder::build() && {
  Program p = std::move(program_);
  const std::size_t na = p.num_atoms(), nb = p.num_bodies();
  p.bodies_of_.assign(na, {});
  p.heads_of_.assign(nb, {});
  p.pos_occ_.assign(na, {});
  p.neg_occ_.assign(na, {});
  for (const Rule& r : p.rules_) {
    p.bodies_of_[r.head].push_back(r.body);
    p.heads_of_[r.body].push_back(r.head);
  }
  for (BodyId b = 0; b < nb; ++b) {
    for (AtomId a : p.bodies_[b].positive) p.pos_occ_[a].push_back(b);
    for (AtomId a : p.bodies_[b].negative) p.neg_occ_[a].push_back(b);
  }

  p.scc_id_ = scc_decompose(dependency_graph(p));
  p.num_sccs_ = 0;
  for (auto id : p.scc_id_) p.num_sccs_ = std::max(p.num_sccs_, id + 1);
  p.scc_atoms_.assign(p.num_sccs_, {});
  for (AtomId a = 0; a < na; ++a) p.scc_atoms_[p.scc_id_[a]].push_back(a);
  p.class_ = classify(p);
  return p;
}

// ---------------------------------------------------------------------------
// Graph structure

bool DependencyGraph::has_edge(NodeId from, NodeId to) const {
  const auto& s = successors[from];
  return std::find(s.begin(), s.end(), to) != s.end();
}

DependencyGraph dependency_graph(const Program& p) {
  DependencyGraph g;
  g.num_atoms = p.num_atoms();
  g.successors.assign(p.num_nodes(), {});
  for (const Rule& r : p.rules()) g.successors[p.body_node(r.body)].push_back(p.atom_node(r.head));
  for (BodyId b = 0; b < p.num_bodies(); ++b)
    for (AtomId a : p.body(b).positive) g.successors[p.atom_node(a)].push_back(p.body_node(b));
  for (auto& s : g.successors) {
    std::ranges::sort(s);
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return g;
}

// Iterative Tarjan.
std::vector<std::uint32_t> scc_decompose(const DependencyGraph& g) {
  constexpr std::uint32_t kUnvisited = UINT32_MAX;
  const std::size_t n = g.num_nodes();
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<NodeId> stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::pair<NodeId, std::size_t>> call;  // node, next successor position
  std::uint32_t counter = 0, components = 0;

  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      if (pos == 0) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      const auto& succ = g.successors[v];
      if (pos < succ.size()) {
        NodeId w = succ[pos++];
        if (index[w] == kUnvisited) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
        } while (w != v);
        ++components;
      }
      NodeId done = v;
      call.pop_back();
      if (!call.empty()) {
        NodeId parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return comp;
}

ProgramClass classify(const Program& p) {
  bool unary = true;
  for (const Rule& r : p.rules()) {
    const auto& pos = p.body(r.body).positive;
    if (pos.size() <= 1) continue;
    unary = false;
    std::size_t inside = 0;
    for (AtomId a : pos)
      if (p.scc_of_atom(a) == p.scc_of_body(r.body)) ++inside;
    if (inside > 1) return ProgramClass::General;
  }
  return unary ? ProgramClass::Unary : ProgramClass::ComponentUnary;
}

std::vector<BodyId> external_support(const Program& p, std::span<const AtomId> u, const Assignment* a) {
  std::vector<bool> in_u(p.num_atoms(), false);
  for (AtomId x : u) in_u[x] = true;
  std::vector<BodyId> out;
  for (AtomId h : u) {
    for (BodyId b : p.bodies_of(h)) {
      if (a && a->body_false(b)) continue;
      const auto& pos = p.body(b).positive;
      if (std::ranges::any_of(pos, [&](AtomId q) { return in_u[q]; })) continue;
      out.push_back(b);
    }
  }
  std::ranges::sort(out);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    for (std::size_t i = 0; i < token.size(); ++i) advance();
    return true;
  }

  void expect(std::string_view token, const char* what) {
    if (!accept(token)) fail(std::string("expected ") + what);
  }

  std::string identifier() {
    skip_space();
    if (!std::islower(static_cast<unsigned char>(peek()))) fail("expected atom");
    std::string out;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') {
        out += c;
        advance();
      } else {
        break;
      }
    }
    return out;
  }

  /// Atom with optional balanced-paren argument text; whitespace inside the
  /// arguments is dropped.
  std::string atom() {
    std::string name = identifier();
    if (peek() != '(') return name;
    int depth = 0;
    do {
      char c = peek();
      if (c == '\0') fail("unbalanced parenthesis");
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (!std::isspace(static_cast<unsigned char>(c))) name += c;
      advance();
    } while (depth > 0);
    return name;
  }

  /// "not" followed by whitespace starts a negative literal.
  bool accept_not() {
    skip_space();
    if (text_.substr(pos_, 3) != "not") return false;
    if (pos_ + 3 >= text_.size() || !std::isspace(static_cast<unsigned char>(text_[pos_ + 3]))) return false;
    for (int i = 0; i < 3; ++i) advance();
    return true;
  }

  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, line_, column_); }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace

Program parse_program(std::string_view text) {
  ProgramBuilder builder;
  Lexer lex(text);
  while (!lex.at_end()) {
    AtomId head = builder.atom(lex.atom());
    std::vector<AtomId> pos, neg;
    if (lex.accept(":-")) {
      do {
        if (lex.accept_not()) {
          neg.push_back(builder.atom(lex.atom()));
        } else {
          pos.push_back(builder.atom(lex.atom()));
        }
      } while (lex.accept(","));
    }
    lex.expect(".", "'.'");
    builder.rule(head, std::move(pos), std::move(neg));
  }
  return std::move(builder).build();
}

std::string to_text(const Program& p) {
  std::string out;
  for (const Rule& r : p.rules()) {
    out += p.atom_name(r.head);
    const Body& b = p.body(r.body);
    if (!b.positive.empty() || !b.negative.empty()) {
      out += " :- ";
      bool first = true;
      for (AtomId a : b.positive) {
        if (!first) out += ", ";
        out += p.atom_name(a);
        first = false;
      }
      for (AtomId a : b.negative) {
        if (!first) out += ", ";
        out += "not " + p.atom_name(a);
        first = false;
      }
    }
    out += ".\n";
  }
  return out;
}

}  // namespace wfprop
