#include "wfprop/reach.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "wfprop/oracle.hpp"

namespace wfprop::reach {

void ReachInstance::validate() const {
  const std::size_t n = num_nodes();
  if (start.size() != n || reached.size() != n) throw std::invalid_argument("start/reached vectors must cover every node");
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (const Edge& e : edges) {
    if (e.from >= n || e.to >= n) throw std::invalid_argument("edge endpoint out of range");
    if (e.membership == Membership::Out) throw std::invalid_argument("edge membership must be in or maybe");
    if (!seen.insert({e.from, e.to}).second) throw std::invalid_argument("duplicate edge");
  }
}

namespace {

Membership parse_membership(const std::string& s, bool allow_out) {
  if (s == "in") return Membership::In;
  if (s == "maybe") return Membership::Maybe;
  if (s == "out" && allow_out) return Membership::Out;
  throw std::invalid_argument("bad membership: " + s);
}

std::string_view membership_text(Membership m) {
  switch (m) {
    case Membership::In: return "in";
    case Membership::Out: return "out";
    case Membership::Maybe: return "maybe";
  }
  return "?";
}

}  // namespace

ReachInstance parse_instance(std::string_view text) {
  ReachInstance inst;
  std::unordered_map<std::string, std::uint32_t> index;
  bool have_nodes = false;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto node = [&](const std::string& label) {
    auto it = index.find(label);
    if (it == index.end()) throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown node " + label);
    return it->second;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    try {
      if (kw == "nodes") {
        std::size_t n = 0;
        if (have_nodes || !(ls >> n)) throw std::invalid_argument("bad nodes line");
        have_nodes = true;
        std::string label;
        while (ls >> label) inst.labels.push_back(label);
        if (inst.labels.empty())
          for (std::size_t i = 0; i < n; ++i) inst.labels.push_back("n" + std::to_string(i));
        if (inst.labels.size() != n) throw std::invalid_argument("label count differs from node count");
        for (std::uint32_t i = 0; i < n; ++i)
          if (!index.emplace(inst.labels[i], i).second) throw std::invalid_argument("duplicate label");
        inst.start.assign(n, Membership::Maybe);
        inst.reached.assign(n, Membership::Maybe);
        continue;
      }
      if (!have_nodes) throw std::invalid_argument("nodes line must come first");
      std::string a, b, m;
      if (kw == "edge") {
        if (!(ls >> a >> b >> m)) throw std::invalid_argument("bad edge line");
        inst.edges.push_back({node(a), node(b), parse_membership(m, false)});
      } else if (kw == "start") {
        if (!(ls >> a >> m)) throw std::invalid_argument("bad start line");
        inst.start[node(a)] = parse_membership(m, true);
      } else if (kw == "outdegree") {
        std::size_t k = 0;
        if (!(ls >> k) || k != 1) throw std::invalid_argument("only outdegree 1 is supported");
        inst.single_successor = true;
      } else if (kw == "reached") {
        if (!(ls >> a >> m)) throw std::invalid_argument("bad reached line");
        inst.reached[node(a)] = parse_membership(m, true);
      } else {
        throw std::invalid_argument("unknown keyword " + kw);
      }
    } catch (const std::invalid_argument& e) {
      const std::string msg = e.what();
      if (msg.starts_with("line ")) throw;
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + msg);
    }
  }
  if (!have_nodes) throw std::invalid_argument("missing nodes line");
  inst.validate();
  return inst;
}

std::string to_text(const ReachInstance& inst) {
  std::string out = "nodes " + std::to_string(inst.num_nodes());
  for (const auto& l : inst.labels) out += " " + l;
  out += "\n";
  for (const Edge& e : inst.edges)
    out += "edge " + inst.labels[e.from] + " " + inst.labels[e.to] + " " + std::string(membership_text(e.membership)) + "\n";
  for (std::size_t x = 0; x < inst.num_nodes(); ++x)
    out += "start " + inst.labels[x] + " " + std::string(membership_text(inst.start[x])) + "\n";
  for (std::size_t x = 0; x < inst.num_nodes(); ++x)
    out += "reached " + inst.labels[x] + " " + std::string(membership_text(inst.reached[x])) + "\n";
  if (inst.single_successor) out += "outdegree 1\n";
  return out;
}

Encoding encode_reach(const ReachInstance& inst) {
  inst.validate();
  const std::size_t n = inst.num_nodes();
  ProgramBuilder b;
  Encoding enc;
  for (std::size_t x = 0; x < n; ++x) enc.reached.push_back(b.atom("reached(" + inst.labels[x] + ")"));
  enc.start.assign(n, std::nullopt);
  for (std::size_t x = 0; x < n; ++x)
    if (inst.start[x] != Membership::Out) enc.start[x] = b.atom("start(" + inst.labels[x] + ")");
  for (const Edge& e : inst.edges)
    enc.edge.push_back(b.atom("edge(" + inst.labels[e.from] + "," + inst.labels[e.to] + ")"));

  auto choice = [&](AtomId x, const std::string& negated) {
    const AtomId nx = b.atom(negated);
    b.rule(x, {}, {nx});
    b.rule(nx, {}, {x});
  };
  for (std::size_t x = 0; x < n; ++x) {
    if (!enc.start[x]) continue;
    if (inst.start[x] == Membership::In)
      b.rule(*enc.start[x], {}, {});
    else
      choice(*enc.start[x], "nstart(" + inst.labels[x] + ")");
  }
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    const Edge& e = inst.edges[i];
    if (e.membership == Membership::In)
      b.rule(enc.edge[i], {}, {});
    else
      choice(enc.edge[i], "nedge(" + inst.labels[e.from] + "," + inst.labels[e.to] + ")");
  }
  for (std::size_t x = 0; x < n; ++x)
    if (enc.start[x]) b.rule(enc.reached[x], {*enc.start[x]}, {});
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    const Edge& e = inst.edges[i];
    b.rule(enc.reached[e.to], {enc.reached[e.from], enc.edge[i]}, {});
  }
  if (inst.single_successor) {
    enc.branch = b.atom("branch");
    for (std::size_t i = 0; i < inst.edges.size(); ++i)
      for (std::size_t j = i + 1; j < inst.edges.size(); ++j)
        if (inst.edges[i].from == inst.edges[j].from) b.rule(*enc.branch, {enc.edge[i], enc.edge[j]}, {});
    enc.assumptions.push_back(Literal::false_of(*enc.branch));
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (inst.reached[x] == Membership::In) enc.assumptions.push_back(Literal::true_of(enc.reached[x]));
    if (inst.reached[x] == Membership::Out) enc.assumptions.push_back(Literal::false_of(enc.reached[x]));
  }
  enc.program = std::move(b).build();
  return enc;
}

namespace {

std::vector<bool> reachable_set(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                const std::vector<bool>& start) {
  std::vector<std::vector<std::uint32_t>> succ(n);
  for (auto [u, v] : edges) succ[u].push_back(v);
  std::vector<bool> seen(start);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t x = 0; x < n; ++x)
    if (start[x]) stack.push_back(x);
  while (!stack.empty()) {
    const std::uint32_t u = stack.back();
    stack.pop_back();
    for (std::uint32_t v : succ[u])
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
  }
  return seen;
}

}  // namespace

ReachInstance random_instance(std::uint64_t seed, std::size_t n_nodes, double edge_density, double fixed_fraction,
                              FixMode mode) {
  if (n_nodes == 0) throw std::invalid_argument("random_instance: at least one node required");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution in_ub(edge_density), coin(0.5), fix(fixed_fraction);
  ReachInstance inst;
  for (std::size_t i = 0; i < n_nodes; ++i) inst.labels.push_back("n" + std::to_string(i));

  std::vector<std::pair<std::uint32_t, std::uint32_t>> ub, chosen;
  std::vector<bool> ub_chosen;
  for (std::uint32_t u = 0; u < n_nodes; ++u)
    for (std::uint32_t v = 0; v < n_nodes; ++v)
      if (u != v && in_ub(rng)) ub.emplace_back(u, v);
  for (auto e : ub) {
    ub_chosen.push_back(coin(rng));
    if (ub_chosen.back()) chosen.push_back(e);
  }
  std::vector<bool> start(n_nodes);
  for (std::size_t x = 0; x < n_nodes; ++x) start[x] = coin(rng);
  const std::vector<bool> reached = reachable_set(n_nodes, chosen, start);

  const bool fix_gs = mode == FixMode::GS, fix_n = mode == FixMode::N;
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (fix_gs || fix(rng)) {
      if (ub_chosen[i]) inst.edges.push_back({ub[i].first, ub[i].second, Membership::In});
    } else {
      inst.edges.push_back({ub[i].first, ub[i].second, Membership::Maybe});
    }
  }
  auto fixed_value = [](bool v) { return v ? Membership::In : Membership::Out; };
  inst.start.resize(n_nodes);
  inst.reached.resize(n_nodes);
  for (std::size_t x = 0; x < n_nodes; ++x)
    inst.start[x] = (fix_gs || fix(rng)) ? fixed_value(start[x]) : Membership::Maybe;
  for (std::size_t x = 0; x < n_nodes; ++x)
    inst.reached[x] = (fix_n || fix(rng)) ? fixed_value(reached[x]) : Membership::Maybe;
  return inst;
}

ReachInstance search_instance(std::uint64_t seed, std::size_t n_nodes, double edge_density) {
  if (n_nodes == 0) throw std::invalid_argument("search_instance: at least one node required");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution in_ub(edge_density), coin(0.5);
  ReachInstance inst;
  inst.single_successor = true;
  for (std::size_t i = 0; i < n_nodes; ++i) inst.labels.push_back("n" + std::to_string(i));
  std::vector<std::pair<std::uint32_t, std::uint32_t>> chosen;
  for (std::uint32_t u = 0; u < n_nodes; ++u) {
    std::vector<std::uint32_t> outs;
    for (std::uint32_t v = 0; v < n_nodes; ++v) {
      if (u == v || !in_ub(rng)) continue;
      inst.edges.push_back({u, v, Membership::Maybe});
      outs.push_back(v);
    }
    if (!outs.empty()) chosen.emplace_back(u, outs[std::uniform_int_distribution<std::size_t>(0, outs.size() - 1)(rng)]);
  }
  std::vector<bool> start(n_nodes, false);
  start[0] = true;
  const auto reached = reachable_set(n_nodes, chosen, start);
  inst.start.assign(n_nodes, Membership::Out);
  inst.start[0] = Membership::In;
  inst.reached.assign(n_nodes, Membership::Maybe);
  for (std::size_t x = 0; x < n_nodes; ++x)
    if (coin(rng)) inst.reached[x] = reached[x] ? Membership::In : Membership::Out;
  return inst;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "consistent";
    case Verdict::MissedPruning: return "missed_pruning";
    case Verdict::UnsoundPruning: return "unsound_pruning";
  }
  return "?";
}

DCReport check_domain_consistency(const ReachInstance& inst, const SolverConfig& config, std::size_t max_nodes) {
  inst.validate();
  const std::size_t n = inst.num_nodes();
  if (n > max_nodes)
    throw oracle::GuardExceeded(std::to_string(n) + " nodes exceed the guard of " + std::to_string(max_nodes));

  // Undetermined edge and start values, enumerated as bits.
  std::vector<std::size_t> open_edges, open_starts;
  for (std::size_t i = 0; i < inst.edges.size(); ++i)
    if (inst.edges[i].membership == Membership::Maybe) open_edges.push_back(i);
  for (std::size_t x = 0; x < n; ++x)
    if (inst.start[x] == Membership::Maybe) open_starts.push_back(x);
  const std::size_t bits = open_edges.size() + open_starts.size();
  if (bits > 24) throw oracle::GuardExceeded(std::to_string(bits) + " undetermined edge/start values exceed 24");

  // supported[var][value]; variables: edges, then starts, then reached.
  const std::size_t ne = inst.edges.size();
  std::vector<std::array<bool, 2>> supported(ne + 2 * n, {false, false});
  std::vector<bool> start(n);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << bits); ++m) {
    edges.clear();
    std::vector<bool> edge_in(ne);
    for (std::size_t i = 0; i < ne; ++i) edge_in[i] = inst.edges[i].membership == Membership::In;
    for (std::size_t k = 0; k < open_edges.size(); ++k) edge_in[open_edges[k]] = m >> k & 1u;
    for (std::size_t i = 0; i < ne; ++i)
      if (edge_in[i]) edges.emplace_back(inst.edges[i].from, inst.edges[i].to);
    for (std::size_t x = 0; x < n; ++x) start[x] = inst.start[x] == Membership::In;
    for (std::size_t k = 0; k < open_starts.size(); ++k) start[open_starts[k]] = m >> (open_edges.size() + k) & 1u;
    if (inst.single_successor) {
      std::vector<std::size_t> out_degree(n, 0);
      bool branching = false;
      for (auto [u, v] : edges) branching = branching || ++out_degree[u] > 1;
      if (branching) continue;
    }
    const auto r = reachable_set(n, edges, start);
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) {
      if (inst.reached[x] == Membership::In && !r[x]) ok = false;
      if (inst.reached[x] == Membership::Out && r[x]) ok = false;
    }
    if (!ok) continue;
    for (std::size_t i = 0; i < ne; ++i) supported[i][edge_in[i]] = true;
    for (std::size_t x = 0; x < n; ++x) {
      supported[ne + x][start[x]] = true;
      supported[ne + n + x][r[x]] = true;
    }
  }

  const Encoding enc = encode_reach(inst);
  Engine engine(enc.program, config);
  auto conflict = engine.propagate();
  if (!conflict) conflict = engine.assume_all(enc.assumptions);
  const Assignment& a = engine.assignment();

  DCReport report;
  report.config = config.name();
  report.conflict = conflict.has_value();
  auto check = [&](std::string name, std::size_t var, AtomId atom) {
    for (bool value : {true, false}) {
      DCEntry e{name, value, supported[var][value], false, Verdict::Consistent};
      e.pruned = report.conflict || a.is_false(Literal::make(atom, value));
      if (e.supported && e.pruned) {
        e.verdict = Verdict::UnsoundPruning;
        ++report.unsound_pruning;
      } else if (!e.supported && !e.pruned) {
        e.verdict = Verdict::MissedPruning;
        ++report.missed_pruning;
      } else {
        ++report.consistent;
      }
      report.entries.push_back(std::move(e));
    }
  };
  for (std::size_t i : open_edges)
    check("edge(" + inst.labels[inst.edges[i].from] + "," + inst.labels[inst.edges[i].to] + ")", i, enc.edge[i]);
  for (std::size_t x : open_starts) check("start(" + inst.labels[x] + ")", ne + x, *enc.start[x]);
  for (std::size_t x = 0; x < n; ++x)
    if (inst.reached[x] == Membership::Maybe) check("reached(" + inst.labels[x] + ")", ne + n + x, enc.reached[x]);
  return report;
}

ReachInstance loop_witness() {
  ReachInstance inst;
  inst.labels = {"s", "u", "v"};
  inst.edges = {{1, 2, Membership::In}, {2, 1, Membership::In}, {0, 1, Membership::Maybe}};
  inst.start = {Membership::In, Membership::Out, Membership::Out};
  inst.reached = {Membership::In, Membership::In, Membership::In};
  return inst;
}

}  // namespace wfprop::reach
