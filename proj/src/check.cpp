#include "qg/check.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "qg/error.hpp"
#include "qg/mcr.hpp"
#include "qg/oracle.hpp"
#include "qg/tp.hpp"

namespace qg {
namespace {

std::optional<std::string> compare(const Arena& arena, const ValueVector& got, const ValueVector& want,
                                   const char* lhs, const char* rhs) {
  for (std::size_t v = 0; v < want.size(); ++v) {
    if (got[v] != want[v]) {
      return std::string(lhs) + " vs " + rhs + " at " + arena.name(static_cast<VertexId>(v)) + ": " +
             got[v].to_string() + " != " + want[v].to_string();
    }
  }
  return std::nullopt;
}

// Rebuilds `arena` keeping the vertices flagged in `keep` and the edges
// accepted by `edge`, which may also rewrite the weight. Returns nullopt if the
// result is not a valid arena.
std::optional<Arena> rebuild(const Arena& arena, const std::vector<std::uint8_t>& keep,
                             const std::vector<std::uint8_t>& target,
                             const std::function<std::optional<Weight>(const Edge&)>& edge) {
  ArenaBuilder b(arena.objective());
  std::vector<VertexId> map(arena.num_vertices(), kNoVertex);
  for (VertexId v = 0; v < static_cast<VertexId>(arena.num_vertices()); ++v) {
    auto i = static_cast<std::size_t>(v);
    if (keep[i]) map[i] = b.add_vertex(arena.name(v), arena.owner(v), target[i] != 0);
  }
  if (b.num_vertices() == 0) return std::nullopt;
  for (const Edge& e : arena.edges()) {
    VertexId s = map[static_cast<std::size_t>(e.src)];
    VertexId d = map[static_cast<std::size_t>(e.dst)];
    if (s == kNoVertex || d == kNoVertex) continue;
    if (auto w = edge(e)) b.add_edge(s, d, *w);
  }
  try {
    return b.build();
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<std::uint8_t> target_flags(const Arena& arena) {
  std::vector<std::uint8_t> t(arena.num_vertices());
  for (VertexId v = 0; v < static_cast<VertexId>(t.size()); ++v) t[static_cast<std::size_t>(v)] = arena.is_target(v);
  return t;
}

}  // namespace

Solved solve_arena(const Arena& arena, AccelMode mode, const AccelOptions& accel, bool record_trace) {
  Solved out;
  AccelOptions opts = accel;
  opts.oracle = mode == AccelMode::Scc ? OracleKind::NoClamp : OracleKind::SimplePaths;
  if (arena.objective() == Objective::MCR) {
    Arena norm = normalize_target(arena);
    McrResult r = mode == AccelMode::None ? solve_mcr(norm, {record_trace, accel.exec}) : solve_mcr_accelerated(norm, opts);
    r.values.resize(arena.num_vertices());
    out.values = std::move(r.values);
    out.stats = r.stats;
    out.trace = std::move(r.trace);
  } else {
    TpResult r = mode == AccelMode::None ? solve_tp(arena, {false, accel.exec}) : solve_tp_accelerated(arena, opts);
    out.values = std::move(r.values);
    out.stats = r.stats;
  }
  return out;
}

std::optional<std::string> cross_validate(const Arena& arena) {
  const bool mcr = arena.objective() == Objective::MCR;
  ValueVector oracle = mcr ? mcr_oracle(arena) : tp_oracle(arena);
  const char* oracle_name = mcr ? "mcr_oracle" : "tp_oracle";
  ValueVector plain = solve_arena(arena, AccelMode::None).values;
  if (auto m = compare(arena, plain, oracle, mcr ? "solve_mcr" : "solve_tp", oracle_name)) return m;
  if (auto m = compare(arena, solve_arena(arena, AccelMode::Scc).values, plain, "accelerated(scc)", "plain")) return m;
  if (auto m = compare(arena, solve_arena(arena, AccelMode::SccPaths).values, plain, "accelerated(scc+paths)", "plain")) {
    return m;
  }
  return std::nullopt;
}

Arena minimize_counterexample(const Arena& arena, const std::function<bool(const Arena&)>& fails) {
  Arena cur = arena;
  auto attempt = [&](const std::optional<Arena>& cand) {
    if (!cand || !fails(*cand)) return false;
    cur = *cand;
    return true;
  };
  bool progress = true;
  while (progress) {
    progress = false;
    const std::size_t n = cur.num_vertices();
    auto keep_edge = [](const Edge& e) -> std::optional<Weight> { return e.weight; };
    for (std::size_t v = 0; v < n && !progress; ++v) {
      std::vector<std::uint8_t> keep(n, 1);
      keep[v] = 0;
      // Also drop vertices left without successors.
      for (bool pruned = true; pruned;) {
        pruned = false;
        for (VertexId u = 0; u < static_cast<VertexId>(n); ++u) {
          if (!keep[static_cast<std::size_t>(u)]) continue;
          auto succ = cur.successors(u);
          if (std::none_of(succ.begin(), succ.end(), [&](VertexId x) { return keep[static_cast<std::size_t>(x)]; })) {
            keep[static_cast<std::size_t>(u)] = 0;
            pruned = true;
          }
        }
      }
      progress = attempt(rebuild(cur, keep, target_flags(cur), keep_edge));
    }
    if (progress) continue;
    std::vector<std::uint8_t> all(n, 1);
    for (VertexId v = 0; v < static_cast<VertexId>(n) && !progress; ++v) {
      if (!cur.is_target(v) || cur.targets().size() < 2) continue;
      auto t = target_flags(cur);
      t[static_cast<std::size_t>(v)] = 0;
      progress = attempt(rebuild(cur, all, t, keep_edge));
    }
    const std::vector<Edge> edges = cur.edges();
    for (std::size_t i = 0; i < edges.size() && !progress; ++i) {
      const Edge drop = edges[i];
      progress = attempt(rebuild(cur, all, target_flags(cur), [&](const Edge& e) -> std::optional<Weight> {
        if (e.src == drop.src && e.dst == drop.dst) return std::nullopt;
        return e.weight;
      }));
    }
    for (std::size_t i = 0; i < edges.size() && !progress; ++i) {
      const Edge at = edges[i];
      if (at.weight == 0) continue;
      for (Weight w : {Weight{0}, at.weight / 2}) {
        if (progress || w == at.weight) continue;
        progress = attempt(rebuild(cur, all, target_flags(cur), [&](const Edge& e) -> std::optional<Weight> {
          return e.src == at.src && e.dst == at.dst ? w : e.weight;
        }));
      }
    }
  }
  return cur;
}

std::string values_hash(const Arena& arena, const ValueVector& values) {
  std::uint64_t h = 14695981039346656037ull;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (std::size_t v = 0; v < values.size(); ++v) {
    feed(arena.name(static_cast<VertexId>(v)) + "=" + values[v].to_string() + ";");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

AccelMode parse_accel(std::string_view name) {
  if (name == "none") return AccelMode::None;
  if (name == "scc") return AccelMode::Scc;
  if (name == "scc+paths") return AccelMode::SccPaths;
  throw Error(ErrorCode::InvalidArgument, "unknown acceleration mode '" + std::string(name) + "'");
}

const char* to_string(AccelMode mode) {
  switch (mode) {
    case AccelMode::None: return "none";
    case AccelMode::Scc: return "scc";
    case AccelMode::SccPaths: return "scc+paths";
  }
  return "?";
}

BenchRow run_bench_cell(const FamilySpec& spec, AccelMode mode, std::size_t path_cap, Exec exec) {
  Arena arena = generate(spec);
  AccelOptions opts;
  opts.path_cap = path_cap;
  opts.exec = exec;
  auto start = std::chrono::steady_clock::now();
  Solved s = solve_arena(arena, mode, opts);
  auto stop = std::chrono::steady_clock::now();
  BenchRow row;
  row.family = to_string(spec.family);
  row.W = spec.W;
  row.n = spec.n;
  row.accel = to_string(mode);
  row.k_e = s.stats.outer_iterations;
  row.k_i = s.stats.inner_iterations;
  row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  row.values_hash = values_hash(arena, s.values);
  return row;
}

std::string to_csv(const BenchRow& row) {
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.1f", row.wall_ms);
  return row.family + "," + std::to_string(row.W) + "," + std::to_string(row.n) + "," + row.accel + "," +
         std::to_string(row.k_e) + "," + std::to_string(row.k_i) + "," + ms + "," + row.values_hash;
}

}  // namespace qg
