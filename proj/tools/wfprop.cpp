// wfprop: parse, solve, propagate, check-dc, bench, verify, dump.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wfprop/flowgraph.hpp"
#include "wfprop/generators.hpp"
#include "wfprop/oracle.hpp"
#include "wfprop/reach.hpp"
#include "wfprop/solver.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace wfprop;

namespace {

constexpr int kExitSat = 0;
constexpr int kExitError = 1;
constexpr int kExitGuard = 2;
constexpr int kExitUnsat = 20;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Program load_program(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_program(text);
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + e.what());
  }
}

std::uint64_t default_seed(std::uint64_t fallback) {
  if (const char* env = std::getenv("WFPROP_SEED")) return std::strtoull(env, nullptr, 10);
  return fallback;
}

SolverConfig make_config(const std::string& props, const std::string& heuristic, std::uint64_t seed) {
  SolverConfig c;
  try {
    c = SolverConfig::from_props(props);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (heuristic == "random") {
    c.heuristic = Heuristic::SeededRandom;
  } else if (heuristic != "lowest") {
    throw UsageError("unknown heuristic " + heuristic);
  }
  c.seed = seed;
  return c;
}

std::vector<Literal> parse_assumptions(const Program& p, const std::vector<std::string>& texts) {
  std::vector<Literal> out;
  for (const auto& t : texts) {
    try {
      out.push_back(parse_literal(p, t));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

std::vector<std::string> names(const Program& p, const std::vector<AtomId>& atoms) {
  std::vector<std::string> out;
  for (AtomId x : atoms) out.push_back(p.atom_name(x));
  std::ranges::sort(out);
  return out;
}

json inference_json(const InferenceCounts& c) {
  return {{"up", c.up}, {"fl", c.fl}, {"dom", c.dom}, {"blprobe", c.blprobe}};
}

json result_json(const std::string& instance, const Program& p, const SolverConfig& c, const SolveResult& r) {
  json sets = json::array();
  for (const auto& s : r.answer_sets) sets.push_back(names(p, s));
  return {{"instance", instance},
          {"props", c.name()},
          {"answer_sets", sets},
          {"complete", r.complete},
          {"branches", r.stats.branches},
          {"conflicts", r.stats.conflicts},
          {"time_ms", r.stats.time.count()},
          {"inferences", inference_json(r.stats.inferences)}};
}

std::string join(const std::vector<std::string>& xs, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? std::string(sep) : "") + xs[i];
  return out;
}

std::string literal_list(const Program& p, std::span<const Literal> ls) {
  std::vector<std::string> parts;
  for (Literal l : ls) parts.push_back(literal_text(p, l));
  return "{" + join(parts, ", ") + "}";
}

// ---------------------------------------------------------------------------

int cmd_parse(const std::string& file) {
  const Program p = load_program(file);
  std::cout << to_text(p);
  std::cout << "% atoms=" << p.num_atoms() << " bodies=" << p.num_bodies() << " rules=" << p.num_rules()
            << " sccs=" << p.num_sccs() << " class=" << to_string(p.classification()) << "\n";
  return kExitSat;
}

int cmd_solve(const std::string& file, const SolverConfig& config, bool as_json) {
  const Program p = load_program(file);
  const SolveResult r = solve(p, config);
  if (as_json) {
    std::cout << result_json(file, p, config, r).dump() << "\n";
  } else {
    std::size_t i = 0;
    for (const auto& s : r.answer_sets) std::cout << "Answer " << ++i << ": " << join(names(p, s), " ") << "\n";
    std::cout << (r.answer_sets.empty() ? (r.complete ? "UNSATISFIABLE" : "UNKNOWN") : "SATISFIABLE") << "\n";
    std::cout << "props: " << config.name() << "\n"
              << "models: " << r.answer_sets.size() << (r.complete ? "" : "+") << "\n"
              << "branches: " << r.stats.branches << "\n"
              << "conflicts: " << r.stats.conflicts << "\n"
              << "time_ms: " << r.stats.time.count() << "\n"
              << "inferences: up=" << r.stats.inferences.up << " fl=" << r.stats.inferences.fl
              << " dom=" << r.stats.inferences.dom << " blprobe=" << r.stats.inferences.blprobe << "\n";
  }
  if (!r.answer_sets.empty()) return kExitSat;
  return r.complete ? kExitUnsat : kExitGuard;
}

int cmd_propagate(const std::string& file, const std::vector<std::string>& assume, SolverConfig config, bool explain) {
  const Program p = load_program(file);
  config.explain = explain;
  Engine e(p, config);
  const auto assumptions = parse_assumptions(p, assume);
  auto conflict = e.propagate();
  if (!conflict) conflict = e.assume_all(assumptions);
  const Assignment& a = e.assignment();
  for (Literal l : a.trail()) {
    const Reason& r = a.reason(l.var());
    std::cout << var_name(p, l.var()) << "=" << (l.positive() ? "T" : "F") << " (" << to_string(r.source) << ")";
    if (explain) {
      switch (r.source) {
        case Source::Nogood: std::cout << " nogood " << literal_list(p, e.nogoods().nogood(r.index)); break;
        case Source::Unfounded: {
          const auto& x = e.explanations()[r.index];
          std::cout << " unfounded {" << join(names(p, x.atoms), ",") << "}";
          break;
        }
        case Source::Dominator: {
          const auto& x = e.explanations()[r.index];
          std::cout << " dominates {" << join(names(p, x.atoms), ",") << "} trigger " << p.atom_name(x.trigger);
          break;
        }
        case Source::Probe: std::cout << " F" << var_name(p, l.var()) << " fails under up,fl"; break;
        case Source::Decision: break;
      }
    }
    std::cout << "\n";
  }
  if (conflict) {
    std::cout << "conflict (" << to_string(conflict->source) << "): " << literal_list(p, conflict->literals) << "\n";
    return kExitUnsat;
  }
  return kExitSat;
}

int cmd_check_dc(const std::string& file, const SolverConfig& config, bool as_json) {
  reach::ReachInstance inst;
  try {
    inst = reach::parse_instance(read_file(file));
  } catch (const std::invalid_argument& e) {
    throw UsageError(file + ": " + e.what());
  }
  const auto report = reach::check_domain_consistency(inst, config);
  if (as_json) {
    json entries = json::array();
    for (const auto& e : report.entries)
      entries.push_back({{"variable", e.variable},
                         {"value", e.value ? "in" : "out"},
                         {"supported", e.supported},
                         {"pruned", e.pruned},
                         {"verdict", reach::to_string(e.verdict)}});
    std::cout << json{{"instance", file},
                      {"props", report.config},
                      {"conflict", report.conflict},
                      {"consistent", report.consistent},
                      {"missed_pruning", report.missed_pruning},
                      {"unsound_pruning", report.unsound_pruning},
                      {"entries", entries}}
                     .dump()
              << "\n";
  } else {
    for (const auto& e : report.entries)
      std::cout << std::left << std::setw(16) << e.variable << " " << std::setw(3) << (e.value ? "in" : "out") << " "
                << (e.supported ? "supported  " : "unsupported") << " " << (e.pruned ? "pruned  " : "kept    ") << " "
                << reach::to_string(e.verdict) << "\n";
    std::cout << "props: " << report.config << (report.conflict ? " (root conflict)" : "") << "\n"
              << "consistent: " << report.consistent << " missed_pruning: " << report.missed_pruning
              << " unsound_pruning: " << report.unsound_pruning << "\n"
              << (report.domain_consistent() ? "DOMAIN CONSISTENT" : "NOT DOMAIN CONSISTENT") << "\n";
  }
  return kExitSat;
}

struct BenchInstance {
  std::string name;
  Program program;
  std::vector<Literal> assumptions;
};

std::vector<BenchInstance> bench_instances(const std::string& dir, std::size_t generate, std::uint64_t seed) {
  std::vector<BenchInstance> out;
  if (!dir.empty()) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_regular_file()) files.push_back(entry.path());
    std::ranges::sort(files);
    for (const auto& f : files) {
      if (f.extension() == ".lp") {
        out.push_back({f.filename().string(), load_program(f.string()), {}});
      } else if (f.extension() == ".reach") {
        auto enc = reach::encode_reach(reach::parse_instance(read_file(f.string())));
        out.push_back({f.filename().string(), std::move(enc.program), std::move(enc.assumptions)});
      }
    }
  }
  for (std::size_t i = 0; i < generate; ++i) {
    auto inst = reach::search_instance(seed + i);
    auto enc = reach::encode_reach(inst);
    out.push_back({"reach-" + std::to_string(seed + i), std::move(enc.program), std::move(enc.assumptions)});
  }
  return out;
}

int cmd_bench(const std::string& dir, const std::vector<std::string>& configs, std::size_t generate,
              std::uint64_t seed, std::size_t enum_limit, std::int64_t budget_ms, bool as_json) {
  const auto instances = bench_instances(dir, generate, seed);
  std::vector<SolverConfig> cs;
  for (const auto& c : configs) {
    cs.push_back(make_config(c, "lowest", seed));
    cs.back().enum_limit = enum_limit;
    cs.back().time_budget = std::chrono::milliseconds(budget_ms);
  }
  struct Totals {
    std::uint64_t solved = 0, branches = 0, conflicts = 0, time = 0;
  };
  std::vector<Totals> totals(cs.size());
  if (!as_json)
    std::cout << std::left << std::setw(20) << "instance" << std::setw(18) << "props" << std::right << std::setw(6)
              << "#S" << std::setw(10) << "time_ms" << std::setw(10) << "#B" << std::setw(10) << "#C" << "\n";
  for (const auto& inst : instances) {
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const SolveResult r = solve(inst.program, cs[k], inst.assumptions);
      const bool solved = r.complete;
      totals[k].solved += solved;
      totals[k].branches += r.stats.branches;
      totals[k].conflicts += r.stats.conflicts;
      totals[k].time += static_cast<std::uint64_t>(r.stats.time.count());
      if (as_json) {
        std::cout << result_json(inst.name, inst.program, cs[k], r).dump() << "\n";
      } else {
        std::cout << std::left << std::setw(20) << inst.name << std::setw(18) << cs[k].name() << std::right
                  << std::setw(6) << (solved ? 1 : 0) << std::setw(10) << r.stats.time.count() << std::setw(10)
                  << r.stats.branches << std::setw(10) << r.stats.conflicts << "\n";
      }
    }
  }
  for (std::size_t k = 0; k < cs.size(); ++k) {
    if (as_json) {
      std::cout << json{{"aggregate", cs[k].name()},
                        {"instances", instances.size()},
                        {"solved", totals[k].solved},
                        {"branches", totals[k].branches},
                        {"conflicts", totals[k].conflicts},
                        {"time_ms", totals[k].time}}
                       .dump()
                << "\n";
    } else {
      std::cout << std::left << std::setw(20) << "TOTAL" << std::setw(18) << cs[k].name() << std::right << std::setw(6)
                << totals[k].solved << std::setw(10) << totals[k].time << std::setw(10) << totals[k].branches
                << std::setw(10) << totals[k].conflicts << "\n";
    }
  }
  if (!as_json && !cs.empty() && totals[0].branches > 0)
    for (std::size_t k = 1; k < cs.size(); ++k)
      std::cout << "#B ratio " << cs[k].name() << " / " << cs[0].name() << ": " << std::fixed << std::setprecision(3)
                << static_cast<double>(totals[k].branches) / static_cast<double>(totals[0].branches) << "\n";
  std::cout << "% #C counts chronological conflicts and rejected models; not comparable to learning solvers\n";
  return kExitSat;
}

// ---------------------------------------------------------------------------
// verify

using Check = std::function<std::optional<std::string>(const Program&)>;

/// Greedily drops rules while the check keeps failing.
Program minimize(const Program& p, const Check& check) {
  std::vector<Rule> rules(p.rules().begin(), p.rules().end());
  auto rebuild = [&](const std::vector<Rule>& rs) {
    ProgramBuilder b;
    for (AtomId x = 0; x < p.num_atoms(); ++x) b.atom(p.atom_name(x));
    for (const Rule& r : rs) b.rule(r.head, p.body(r.body).positive, p.body(r.body).negative);
    return std::move(b).build();
  };
  for (std::size_t i = 0; i < rules.size();) {
    auto fewer = rules;
    fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
    if (check(rebuild(fewer)))
      rules = std::move(fewer);
    else
      ++i;
  }
  return rebuild(rules);
}

std::optional<std::string> check_answer_sets(const Program& p) {
  const auto expected = oracle::enumerate_answer_sets(p);
  for (const char* props : {"up", "up,fl", "up,fl,dom", "up,blprobe", "up,fl,blprobe", "up,fl,dom,blprobe"}) {
    auto got = solve(p, SolverConfig::from_props(props)).answer_sets;
    std::ranges::sort(got);
    if (got != expected)
      return std::string("answer sets differ from the oracle under ") + props + " (solver " +
             std::to_string(got.size()) + ", oracle " + std::to_string(expected.size()) + ")";
  }
  return std::nullopt;
}

std::optional<std::string> check_dominators(const Program& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto a = gen::random_closed_assignment(rng, p, 4);
  if (!a) return std::nullopt;
  const auto g = build_flowgraph(p, *a);
  const auto t = compute_dominators(g);
  std::set<Literal> emitted;
  for (const auto& c : dominator_candidates(p, *a, g, t)) emitted.insert(c.literal);
  auto all = oracle::wfj(p, *a, oracle::Omega::All);
  auto wfd = oracle::wfd(p, *a, oracle::Omega::All);
  all.insert(wfd.begin(), wfd.end());
  for (Literal l : emitted)
    if (!all.contains(l)) return "unsound dominator consequence " + literal_text(p, l) + " at " + literal_list(p, a->trail());
  if (p.classification() == ProgramClass::General) return std::nullopt;
  auto loops = oracle::wfj(p, *a, oracle::Omega::Loops);
  auto ld = oracle::wfd(p, *a, oracle::Omega::Loops);
  loops.insert(ld.begin(), ld.end());
  for (Literal l : loops)
    if (!emitted.contains(l)) return "missed BL/LD consequence " + literal_text(p, l) + " at " + literal_list(p, a->trail());
  if (p.classification() == ProgramClass::Unary && emitted != all)
    return "dominator consequences differ from WFJ/WFD at " + literal_list(p, a->trail());
  return std::nullopt;
}

int cmd_verify(std::uint64_t seed, std::size_t count) {
  std::size_t failures = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = seed + i;
    std::mt19937_64 rng(s);
    gen::ProgramShape shape;
    shape.atoms = 4 + s % 7;
    shape.rules = shape.atoms + s % 6;
    shape.target = static_cast<ProgramClass>(s % 3);
    const Program p = gen::random_program(rng, shape);
    const std::uint64_t aseed = rng();
    std::vector<std::pair<std::string, Check>> checks{
        {"answer-sets", check_answer_sets},
        {"dominators", [&](const Program& q) { return check_dominators(q, aseed); }},
    };
    for (const auto& [name, check] : checks) {
      const auto failure = check(p);
      if (!failure) continue;
      ++failures;
      const Program small = minimize(p, check);
      std::cout << "FAIL seed=" << s << " property=" << name << ": " << *failure << "\n"
                << "reproducer:\n"
                << to_text(small);
    }
    for (auto mode : {reach::FixMode::GS, reach::FixMode::N, reach::FixMode::None}) {
      const auto inst = reach::random_instance(s, 2 + s % 4, 0.4, 0.3, mode);
      const char* props = mode == reach::FixMode::GS ? "up,fl" : "up,fl,dom";
      const auto report = reach::check_domain_consistency(inst, SolverConfig::from_props(props));
      if (report.domain_consistent()) continue;
      ++failures;
      std::cout << "FAIL seed=" << s << " property=dc props=" << props << " missed=" << report.missed_pruning
                << " unsound=" << report.unsound_pruning << "\nreproducer:\n"
                << reach::to_text(inst);
    }
  }
  std::cout << "verified " << count << " cases, " << failures << " failures\n";
  return failures == 0 ? kExitSat : kExitError;
}

int cmd_dump(const std::string& file, const std::vector<std::string>& assume, const SolverConfig& config, bool tree) {
  const Program p = load_program(file);
  Engine e(p, config);
  auto conflict = e.propagate();
  if (!conflict) conflict = e.assume_all(parse_assumptions(p, assume));
  const auto g = build_flowgraph(p, e.assignment());
  const auto t = compute_dominators(g);
  std::cout << to_dot(p, g, &t, DotOptions{tree});
  if (conflict) {
    std::cerr << "conflict (" << to_string(conflict->source) << ") before the flowgraph was built\n";
    return kExitUnsat;
  }
  return kExitSat;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wfprop: unfounded-set and dominator propagation for normal logic programs"};
  app.require_subcommand(1);

  std::string file, props = "up,fl", heuristic = "lowest", dir;
  std::vector<std::string> assume, configs{"up,fl", "up,fl,dom"};
  std::size_t enum_limit = 0, bench_enum = 1, count = 100, generate = 0;
  std::uint64_t seed = default_seed(1);
  std::int64_t budget_ms = 0;
  bool as_json = false, explain = false, no_tree = false;

  auto* parse = app.add_subcommand("parse", "Parse a program and print it normalized");
  parse->add_option("file", file)->required();

  auto* solve_cmd = app.add_subcommand("solve", "Enumerate answer sets");
  solve_cmd->add_option("file", file)->required();
  solve_cmd->add_option("--props", props, "Propagators, e.g. up,fl,dom,blprobe");
  solve_cmd->add_option("--enum", enum_limit, "Stop after N answer sets (0: all)");
  solve_cmd->add_option("--heuristic", heuristic, "lowest or random");
  solve_cmd->add_option("--seed", seed);
  solve_cmd->add_option("--time-ms", budget_ms, "Wall clock budget");
  solve_cmd->add_flag("--json", as_json);

  auto* prop = app.add_subcommand("propagate", "Print the root fixpoint under assumptions");
  prop->add_option("file", file)->required();
  prop->add_option("--assume", assume, "t:atom, f:atom or t:{a,not b}; repeatable");
  prop->add_option("--props", props);
  prop->add_flag("--explain", explain);

  auto* dc = app.add_subcommand("check-dc", "Domain consistency report for a reach instance");
  dc->add_option("file", file)->required();
  dc->add_option("--props", props);
  dc->add_flag("--json", as_json);

  auto* bench = app.add_subcommand("bench", "Compare propagator configurations");
  bench->add_option("dir", dir, "Directory of .lp and .reach files");
  bench->add_option("--configs", configs)->delimiter(';');
  bench->add_option("--generate", generate, "Add N generated reach search instances");
  bench->add_option("--seed", seed);
  bench->add_option("--enum", bench_enum, "Stop each run after N answer sets (0: all)")->capture_default_str();
  bench->add_option("--time-ms", budget_ms);
  bench->add_flag("--json", as_json);

  auto* verify = app.add_subcommand("verify", "Randomized cross-check against the oracles");
  verify->add_option("--seed", seed);
  verify->add_option("--count", count);

  auto* dump = app.add_subcommand("dump", "Graphviz flowgraph and dominator tree at the fixpoint");
  dump->add_option("file", file)->required();
  dump->add_option("--assume", assume, "Repeatable");
  dump->add_option("--props", props);
  dump->add_flag("--no-tree", no_tree);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*parse) return cmd_parse(file);
    if (*solve_cmd) {
      auto c = make_config(props, heuristic, seed);
      c.enum_limit = enum_limit;
      c.time_budget = std::chrono::milliseconds(budget_ms);
      return cmd_solve(file, c, as_json);
    }
    if (*prop) return cmd_propagate(file, assume, make_config(props, "lowest", seed), explain);
    if (*dc) return cmd_check_dc(file, make_config(props, "lowest", seed), as_json);
    if (*bench) return cmd_bench(dir, configs, generate, seed, bench_enum, budget_ms, as_json);
    if (*verify) return cmd_verify(seed, count);
    if (*dump) return cmd_dump(file, assume, make_config(props, "lowest", seed), !no_tree);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const oracle::GuardExceeded& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return kExitGuard;
  }
  return kExitError;
}
