#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "qg/accel.hpp"
#include "qg/check.hpp"
#include "qg/error.hpp"
#include "qg/gamefile.hpp"
#include "qg/mcr.hpp"
#include "qg/oracle.hpp"
#include "qg/strategies.hpp"
#include "qg/tp.hpp"

namespace {

using namespace qg;

constexpr const char* kConvention =
    "all-passes (every loop-body execution counts, including the final pass that changes nothing)";

struct CheckFailed {};

Arena load(const std::string& path) {
  std::vector<std::string> warnings;
  Arena arena = parse_file(path, &warnings);
  for (const auto& w : warnings) std::cerr << path << ": warning: " << w << "\n";
  return arena;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

Exec parse_exec(const std::string& s) {
  if (s == "serial") return Exec::Serial;
  if (s == "parallel") return Exec::Parallel;
  return Exec::Auto;
}

std::string value_table(const Arena& arena, const ValueVector& values) {
  std::size_t width = 0;
  for (std::size_t v = 0; v < values.size(); ++v) width = std::max(width, arena.name(static_cast<VertexId>(v)).size());
  std::ostringstream os;
  for (std::size_t v = 0; v < values.size(); ++v) {
    const std::string& name = arena.name(static_cast<VertexId>(v));
    os << name << std::string(width - name.size() + 2, ' ') << values[v].to_string() << "\n";
  }
  return os.str();
}

std::string stats_text(const SolveStats& st) {
  std::ostringstream os;
  os << "# convention: " << kConvention << "\n"
     << "# outer_iterations " << st.outer_iterations << "\n"
     << "# inner_iterations " << st.inner_iterations << "\n"
     << "# sweeps " << st.sweeps << "\n"
     << "# wall_ms " << std::fixed << std::setprecision(3) << st.wall_ms << "\n";
  return os.str();
}

std::string trace_tsv(const Arena& arena, const IterationTrace& trace) {
  std::ostringstream os;
  os << "sweep";
  for (std::size_t v = 0; v < arena.num_vertices(); ++v) os << "\t" << arena.name(static_cast<VertexId>(v));
  os << "\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    os << i;
    for (std::size_t v = 0; v < arena.num_vertices(); ++v) os << "\t" << trace[i][v].to_string();
    os << "\n";
  }
  return os.str();
}

struct SolveArgs {
  std::string file;
  std::string accel = "none";
  std::size_t path_cap = 4096;
  bool stats = false;
  std::string trace;
  bool json = false;
  std::string exec = "auto";
};

int cmd_solve(const SolveArgs& a) {
  Arena arena = load(a.file);
  AccelMode mode = parse_accel(a.accel);
  if (!a.trace.empty() && (mode != AccelMode::None || arena.objective() != Objective::MCR)) {
    throw Error(ErrorCode::InvalidArgument, "--trace needs an mcr game and --accel none");
  }
  AccelOptions opts;
  opts.path_cap = a.path_cap;
  opts.exec = parse_exec(a.exec);
  Solved s = solve_arena(arena, mode, opts, !a.trace.empty());
  if (!a.stats) s.stats.wall_ms = 0;
  if (!a.trace.empty()) {
    Arena norm = normalize_target(arena);
    write_output(a.trace, trace_tsv(norm, *s.trace));
  }
  if (a.json) {
    std::cout << write_results_json(arena, s.values, s.stats);
  } else {
    std::cout << value_table(arena, s.values);
    if (a.stats) std::cout << stats_text(s.stats);
  }
  return 0;
}

struct StrategyArgs {
  std::string file;
  std::string player = "both";
  bool json = false;
  std::optional<std::int64_t> threshold;
};

std::string choice_lines(const Arena& arena, const MemorylessStrategy& s, const std::string& label) {
  std::ostringstream os;
  for (VertexId v = 0; v < static_cast<VertexId>(s.choice.size()); ++v) {
    if (s.choice[static_cast<std::size_t>(v)] == kNoVertex) continue;
    os << label << " " << arena.name(v) << " -> " << arena.name(s(v)) << "\n";
  }
  return os.str();
}

int cmd_strategy(const StrategyArgs& a) {
  Arena arena = load(a.file);
  const bool want_max = a.player != "min";
  const bool want_min = a.player != "max";
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  std::ostringstream text;
  ValueVector values;
  SolveStats stats;
  if (arena.objective() == Objective::MCR) {
    Arena norm = normalize_target(arena);
    McrResult r = solve_mcr(norm, {true, Exec::Auto});
    stats = r.stats;
    values.assign(r.values.begin(), r.values.begin() + static_cast<std::ptrdiff_t>(arena.num_vertices()));
    if (want_max) {
      MemorylessStrategy mx = extract_max_memoryless(norm, r.values);
      list.push_back(strategy_json(norm, mx));
      text << choice_lines(norm, mx, "max");
    }
    if (want_min) {
      MinMcrStrategies mn = extract_min_mcr(norm, r);
      auto sw = make_switching(mn.sigma1, mn.sigma2, r.values, norm, a.threshold);
      list.push_back(switching_json(norm, *sw));
      list.push_back(counter_json(*mn.sigma_star));
      text << choice_lines(norm, mn.sigma1, "min sigma1") << choice_lines(norm, mn.sigma2, "min sigma2")
           << "min counter memory_size " << mn.sigma_star->k() + 1 << "\n";
    }
  } else {
    TpResult r = solve_tp(arena);
    values = r.values;
    stats = r.stats;
    if (want_max) {
      MemorylessStrategy mx = extract_max_tp(arena, values);
      list.push_back(strategy_json(arena, mx));
      text << choice_lines(arena, mx, "max");
    }
    if (want_min) {
      MemorylessStrategy mn = extract_min_tp(arena, values);
      list.push_back(strategy_json(arena, mn));
      text << choice_lines(arena, mn, "min");
    }
  }
  stats.wall_ms = 0;
  if (a.json) {
    std::cout << write_results_json(arena, values, stats, list);
  } else {
    std::cout << text.str();
  }
  return 0;
}

struct CheckArgs {
  std::string file;
  std::vector<std::string> random;
  std::string objective = "both";
};

std::map<std::string, std::int64_t> parse_pairs(const std::vector<std::string>& items) {
  std::map<std::string, std::int64_t> out{{"seed", 1}, {"count", 100}, {"vmax", 5}, {"wmax", 3}};
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    if (!out.count(key)) throw Error(ErrorCode::InvalidArgument, "unknown --random key '" + key + "'");
    try {
      out[key] = std::stoll(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad integer in '" + item + "'");
    }
  }
  if (out["vmax"] < 1 || out["wmax"] < 0 || out["count"] < 0) throw Error(ErrorCode::InvalidArgument, "bad --random bounds");
  return out;
}

bool fails(const Arena& arena) {
  try {
    return cross_validate(arena).has_value();
  } catch (const Error& e) {
    return e.code() != ErrorCode::TooManyStrategies && e.code() != ErrorCode::CapExceeded;
  }
}

int report_failure(const Arena& arena, const std::string& what) {
  std::cout << "mismatch: " << what << "\n";
  Arena small = minimize_counterexample(arena, fails);
  std::string again;
  try {
    again = cross_validate(small).value_or("error");
  } catch (const Error& e) {
    again = e.what();
  }
  std::cout << "# minimized counterexample (" << small.num_vertices() << " vertices): " << again << "\n"
            << serialize(small);
  return 1;
}

int check_one(const Arena& arena) {
  std::optional<std::string> m;
  try {
    m = cross_validate(arena);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::TooManyStrategies || e.code() == ErrorCode::CapExceeded) throw;
    m = std::string(e.what());
  }
  return m ? report_failure(arena, *m) : 0;
}

int cmd_check(const CheckArgs& a) {
  if (a.file.empty() == a.random.empty()) throw Error(ErrorCode::InvalidArgument, "give either a file or --random");
  if (!a.file.empty()) {
    Arena arena = load(a.file);
    if (int rc = check_one(arena)) return rc;
    std::cout << "checked 1 arena, 0 mismatches\n";
    return 0;
  }
  auto p = parse_pairs(a.random);
  std::mt19937_64 rng(static_cast<std::uint64_t>(p["seed"]));
  std::vector<Objective> objectives;
  if (a.objective != "tp") objectives.push_back(Objective::MCR);
  if (a.objective != "mcr") objectives.push_back(Objective::TP);
  std::uint64_t checked = 0;
  for (std::int64_t i = 0; i < p["count"]; ++i) {
    for (Objective o : objectives) {
      RandomArenaSpec spec;
      spec.objective = o;
      spec.min_vertices = 1;
      spec.max_vertices = static_cast<std::size_t>(p["vmax"]);
      spec.max_weight = p["wmax"];
      Arena arena = random_arena(spec, rng);
      if (int rc = check_one(arena)) return rc;
      ++checked;
    }
  }
  std::cout << "checked " << checked << " arenas, 0 mismatches\n";
  return 0;
}

struct GenArgs {
  std::string family;
  Weight W = 1;
  std::size_t n = 1;
  std::string objective;
  std::string out;
};

std::optional<Objective> parse_objective(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "mcr") return Objective::MCR;
  if (s == "tp") return Objective::TP;
  throw Error(ErrorCode::InvalidArgument, "unknown objective '" + s + "'");
}

int cmd_gen(const GenArgs& a) {
  write_output(a.out, serialize(generate({parse_family(a.family), a.W, a.n, parse_objective(a.objective)})));
  return 0;
}

struct BenchArgs {
  std::string family = "layered";
  std::vector<Weight> Ws{50, 200};
  std::vector<std::size_t> ns{100, 500};
  std::vector<std::string> accel{"none"};
  std::size_t path_cap = 4096;
  std::string csv;
  std::string exec = "auto";
};

int cmd_bench(const BenchArgs& a) {
  Family family = parse_family(a.family);
  std::vector<AccelMode> modes;
  for (const auto& m : a.accel) {
    if (m == "all") {
      modes = {AccelMode::None, AccelMode::Scc, AccelMode::SccPaths};
      break;
    }
    modes.push_back(parse_accel(m));
  }
  std::ostringstream os;
  os << kBenchHeader << "\n";
  for (Weight W : a.Ws) {
    for (std::size_t n : a.ns) {
      for (AccelMode mode : modes) {
        os << to_csv(run_bench_cell({family, W, n, std::nullopt}, mode, a.path_cap, parse_exec(a.exec))) << "\n";
        if (!a.csv.empty()) std::cerr << "done W=" << W << " n=" << n << " accel=" << to_string(mode) << "\n";
      }
    }
  }
  write_output(a.csv, os.str());
  return 0;
}

struct PlayArgs {
  std::string file;
  std::string as = "max";
  std::string start;
  std::size_t max_steps = 100;
};

int cmd_play(const PlayArgs& a) {
  Arena original = load(a.file);
  const bool mcr = original.objective() == Objective::MCR;
  Arena arena = mcr ? normalize_target(original) : original;
  ValueVector values;
  std::shared_ptr<MooreStrategy> machine_max;
  std::shared_ptr<MooreStrategy> machine_min;
  if (mcr) {
    McrResult r = solve_mcr(arena, {true, Exec::Auto});
    values = r.values;
    machine_max = std::make_shared<MemorylessMachine>(extract_max_memoryless(arena, values));
    MinMcrStrategies mn = extract_min_mcr(arena, r);
    machine_min = make_switching(mn.sigma1, mn.sigma2, values, arena);
  } else {
    values = solve_tp(arena).values;
    machine_max = std::make_shared<MemorylessMachine>(extract_max_tp(arena, values));
    machine_min = std::make_shared<MemorylessMachine>(extract_min_tp(arena, values));
  }
  const Player human = a.as == "min" ? Player::Min : Player::Max;
  VertexId v = 0;
  if (!a.start.empty()) {
    auto found = arena.find(a.start);
    if (!found) throw Error(ErrorCode::UndeclaredVertex, "no vertex named '" + a.start + "'");
    v = *found;
  }
  Memory mx = machine_max->initial(v);
  Memory mn = machine_min->initial(v);
  std::int64_t sum = 0;
  for (std::size_t step = 0; step < a.max_steps; ++step) {
    std::cout << "at " << arena.name(v) << " (" << to_string(arena.owner(v)) << ")  sum " << sum << "  value-to-go "
              << values[static_cast<std::size_t>(v)].to_string() << "\n";
    if (mcr && arena.is_target(v)) {
      std::cout << "target reached, payoff " << sum << "\n";
      return 0;
    }
    VertexId next = kNoVertex;
    if (arena.owner(v) == human) {
      auto succ = arena.successors(v);
      auto w = arena.weights(v);
      for (std::size_t i = 0; i < succ.size(); ++i) {
        std::cout << "  [" << i << "] " << arena.name(succ[i]) << " (" << w[i] << ")\n";
      }
      while (next == kNoVertex) {
        std::cout << "move> " << std::flush;
        std::string line;
        if (!std::getline(std::cin, line) || line == "q") return 0;
        if (auto named = arena.find(line); named && arena.edge_weight(v, *named)) {
          next = *named;
        } else {
          try {
            std::size_t k = std::stoul(line);
            if (k < succ.size()) next = succ[k];
          } catch (const std::exception&) {
          }
        }
        if (next == kNoVertex) std::cout << "illegal move\n";
      }
    } else {
      next = arena.owner(v) == Player::Max ? machine_max->decide(mx, v) : machine_min->decide(mn, v);
      std::cout << "  opponent plays " << arena.name(next) << "\n";
    }
    sum += *arena.edge_weight(v, next);
    mx = machine_max->update(mx, next);
    mn = machine_min->update(mn, next);
    v = next;
  }
  std::cout << "step limit reached, sum " << sum << "\n";
  return 0;
}

struct ConvertArgs {
  std::string file;
  bool dot = false;
  bool values = false;
  std::string out;
};

int cmd_convert(const ConvertArgs& a) {
  Arena arena = load(a.file);
  if (!a.dot) {
    write_output(a.out, serialize(arena));
    return 0;
  }
  std::optional<ValueVector> values;
  if (a.values) values = solve_arena(arena, AccelMode::None).values;
  write_output(a.out, export_dot(arena, values ? &*values : nullptr));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver for min-cost reachability and total-payoff games"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve a game and print its values");
  s->add_option("file", solve.file, "Game file")->required();
  s->add_option("--accel", solve.accel, "none, scc or scc+paths")->check(CLI::IsMember({"none", "scc", "scc+paths"}));
  s->add_option("--path-cap", solve.path_cap, "Simple-path candidate cap per vertex");
  s->add_flag("--stats", solve.stats, "Print iteration counts and timing");
  s->add_option("--trace", solve.trace, "Write the MCR iteration trace as TSV");
  s->add_flag("--json", solve.json, "JSON output");
  s->add_option("--exec", solve.exec, "serial, parallel or auto")->check(CLI::IsMember({"serial", "parallel", "auto"}));

  StrategyArgs strat;
  auto* st = app.add_subcommand("strategy", "Solve a game and print optimal strategies");
  st->add_option("file", strat.file, "Game file")->required();
  st->add_option("--player", strat.player, "max, min or both")->check(CLI::IsMember({"max", "min", "both"}));
  st->add_flag("--json", strat.json, "JSON output");
  st->add_option("--threshold", strat.threshold, "Payoff threshold for -inf vertices (MCR switching)");

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Cross-validate solvers against brute-force oracles");
  c->add_option("file", check.file, "Game file");
  c->add_option("--random", check.random, "seed=N count=K vmax=V wmax=W");
  c->add_option("--objective", check.objective, "mcr, tp or both")->check(CLI::IsMember({"mcr", "tp", "both"}));

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Emit a generated game");
  g->add_option("family", gen.family, "fig1a, fig2a, fig2b, lsp_fig5 or layered")->required();
  g->add_option("--W", gen.W, "Weight parameter");
  g->add_option("--n", gen.n, "Size parameter");
  g->add_option("--objective", gen.objective, "Override the objective (mcr or tp)");
  g->add_option("-o,--output", gen.out, "Output file");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Iteration counts and timings over a family");
  b->add_option("--family", bench.family, "Generator family");
  b->add_option("--W-list", bench.Ws, "Comma-separated W values")->delimiter(',');
  b->add_option("--n-list", bench.ns, "Comma-separated n values")->delimiter(',');
  b->add_option("--accel", bench.accel, "none, scc, scc+paths or all (comma-separated)")->delimiter(',');
  b->add_option("--path-cap", bench.path_cap, "Simple-path candidate cap per vertex");
  b->add_option("--csv", bench.csv, "Output CSV file (default stdout)");
  b->add_option("--exec", bench.exec, "serial, parallel or auto")->check(CLI::IsMember({"serial", "parallel", "auto"}));

  PlayArgs play;
  auto* p = app.add_subcommand("play", "Play interactively against the optimal strategy");
  p->add_option("file", play.file, "Game file")->required();
  p->add_option("--as", play.as, "Your player")->check(CLI::IsMember({"max", "min"}));
  p->add_option("--start", play.start, "Start vertex (default: the first one)");
  p->add_option("--max-steps", play.max_steps, "Stop after this many moves");

  ConvertArgs conv;
  auto* cv = app.add_subcommand("convert", "Convert a game file");
  cv->add_option("file", conv.file, "Game file")->required();
  cv->add_flag("--dot", conv.dot, "Graphviz output");
  cv->add_flag("--values", conv.values, "Annotate DOT vertices with their values");
  cv->add_option("-o,--output", conv.out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*s) return cmd_solve(solve);
    if (*st) return cmd_strategy(strat);
    if (*c) return cmd_check(check);
    if (*g) return cmd_gen(gen);
    if (*b) return cmd_bench(bench);
    if (*p) return cmd_play(play);
    if (*cv) return cmd_convert(conv);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
