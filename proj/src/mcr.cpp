#include "qg/mcr.hpp"

#include <chrono>
#include <algorithm>
#include <numeric>

#include "qg/attractor.hpp"
#include "qg/sweep.hpp"

namespace qg {

namespace {
constexpr std::size_t kMaxTraceEntries = 100'000'000;
}

std::int64_t cutoff_threshold(const Arena& arena) {
  return static_cast<std::int64_t>(arena.num_vertices() - 1) * max_abs_weight(arena);
}

std::uint64_t mcr_sweep_bound(const Arena& arena) {
  const auto n = static_cast<std::uint64_t>(arena.num_vertices());
  const auto w = static_cast<std::uint64_t>(max_abs_weight(arena));
  return (2 * n - 1) * w * n + 2 * n;
}

McrResult solve_mcr(const Arena& arena, const SolveOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const VertexId t = target_of(arena);
  const std::size_t n = arena.num_vertices();

  std::vector<VertexId> active;
  active.reserve(n);
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v)
    if (v != t) active.push_back(v);

  ValueVector cur(n, ExtValue::pos_inf());
  cur[static_cast<std::size_t>(t)] = 0;
  ValueVector nxt = cur;

  McrResult r;
  if (opts.record_trace) r.trace.emplace().push_back(cur);
  SweepSpec spec{&arena, active, nullptr, cutoff_threshold(arena)};
  const std::uint64_t bound = mcr_sweep_bound(arena);
  while (true) {
    ++r.stats.sweeps;
    if (r.stats.sweeps > bound) throw Error(ErrorCode::CapExceeded, "sweep bound exceeded");
    bool changed = sweep(spec, cur, nxt, opts.exec);
    std::swap(cur, nxt);
    if (r.trace) {
      if ((r.trace->size() + 1) * n > kMaxTraceEntries) throw Error(ErrorCode::CapExceeded, "trace too large");
      r.trace->push_back(cur);
    }
    if (!changed) break;
  }
  r.values = std::move(cur);
  r.stats.inner_iterations = r.stats.sweeps;
  r.stats.outer_iterations = 1;
  r.stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

ValueVector mcr_operator(const Arena& arena, const ValueVector& x) {
  const VertexId t = target_of(arena);
  ValueVector out = x;
  std::vector<VertexId> active;
  for (VertexId v = 0; v < static_cast<VertexId>(arena.num_vertices()); ++v)
    if (v != t) active.push_back(v);
  SweepSpec spec{&arena, active, nullptr, ExtValue::kFiniteLimit};
  sweep_serial(spec, x, out);
  return out;
}

const char* to_string(Sign s) {
  switch (s) {
    case Sign::Negative: return "negative";
    case Sign::Zero: return "zero";
    case Sign::Positive: return "positive";
  }
  return "?";
}

std::vector<Sign> mp_sign(const Arena& arena) {
  const std::size_t n = arena.num_vertices();
  const auto W = static_cast<unsigned __int128>(max_abs_weight(arena));
  const auto nn = static_cast<unsigned __int128>(n);
  if (nn * nn * W > 100'000'000'000'000ULL) throw Error(ErrorCode::CapExceeded, "|V|^2 * W exceeds 10^14");
  const unsigned __int128 horizon = 4 * nn * nn * W + 1;
  if (horizon * (W == 0 ? 1 : W) >= (static_cast<unsigned __int128>(1) << 62)) {
    throw Error(ErrorCode::CapExceeded, "finite-horizon values would not fit 62 bits");
  }
  const auto N = static_cast<std::uint64_t>(horizon);

  std::vector<std::int64_t> cur(n, 0), nxt(n, 0);
  for (std::uint64_t k = 0; k < N; ++k) {
    for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
      auto succ = arena.successors(v);
      auto w = arena.weights(v);
      const bool is_max = arena.owner(v) == Player::Max;
      std::int64_t best = w[0] + cur[static_cast<std::size_t>(succ[0])];
      for (std::size_t i = 1; i < succ.size(); ++i) {
        std::int64_t c = w[i] + cur[static_cast<std::size_t>(succ[i])];
        best = is_max ? std::max(best, c) : std::min(best, c);
      }
      nxt[static_cast<std::size_t>(v)] = best;
    }
    std::swap(cur, nxt);
  }
  std::vector<Sign> out(n, Sign::Zero);
  const auto bigN = static_cast<__int128>(N);
  for (std::size_t v = 0; v < n; ++v) {
    __int128 scaled = 2 * static_cast<__int128>(n) * cur[v];
    if (scaled > bigN) {
      out[v] = Sign::Positive;
    } else if (scaled < -bigN) {
      out[v] = Sign::Negative;
    }
  }
  return out;
}

Arena make_bipartite(const Arena& arena) {
  ArenaBuilder b(arena.objective());
  const auto n = static_cast<VertexId>(arena.num_vertices());
  for (VertexId v = 0; v < n; ++v) b.add_vertex(arena.name(v), arena.owner(v), arena.is_target(v));
  for (const Edge& e : arena.edges()) {
    if (arena.owner(e.src) != arena.owner(e.dst)) {
      b.add_edge(e.src, e.dst, e.weight);
      continue;
    }
    VertexId r = b.add_vertex(b.fresh_name("r_" + arena.name(e.src) + "_" + arena.name(e.dst)),
                              opponent(arena.owner(e.src)));
    b.add_edge(e.src, r, e.weight);
    b.add_edge(r, e.dst, 0);
  }
  return b.build();
}

Arena mp_to_mcr(const Arena& arena) {
  Arena bip = make_bipartite(arena.objective() == Objective::MCR ? arena.with_objective(Objective::TP) : arena);
  ArenaBuilder b(Objective::MCR);
  const auto n = static_cast<VertexId>(bip.num_vertices());
  for (VertexId v = 0; v < n; ++v) b.add_vertex(bip.name(v), bip.owner(v), false);
  VertexId t = b.add_vertex(b.fresh_name("t"), Player::Max, true);
  for (const Edge& e : bip.edges()) b.add_edge(e.src, e.dst, e.weight);
  for (VertexId v = 0; v < n; ++v)
    if (bip.owner(v) == Player::Min) b.add_edge(v, t, 0);
  b.add_edge(t, t, 0);
  return b.build();
}

Arena induced_subarena(const Arena& arena, const std::vector<std::uint8_t>& keep, std::vector<VertexId>* index_map) {
  const auto n = static_cast<VertexId>(arena.num_vertices());
  std::vector<VertexId> to_new(static_cast<std::size_t>(n), kNoVertex);
  bool has_target = false;
  ArenaBuilder b(Objective::TP);
  if (index_map) index_map->clear();
  for (VertexId v = 0; v < n; ++v) {
    if (!keep[static_cast<std::size_t>(v)]) continue;
    to_new[static_cast<std::size_t>(v)] = b.add_vertex(arena.name(v), arena.owner(v), arena.is_target(v));
    has_target = has_target || arena.is_target(v);
    if (index_map) index_map->push_back(v);
  }
  for (const Edge& e : arena.edges()) {
    VertexId s = to_new[static_cast<std::size_t>(e.src)];
    VertexId d = to_new[static_cast<std::size_t>(e.dst)];
    if (s != kNoVertex && d != kNoVertex) b.add_edge(s, d, e.weight);
  }
  Arena sub = b.build();
  return arena.objective() == Objective::MCR && has_target ? sub.with_objective(Objective::MCR) : sub;
}

std::vector<VertexId> classify_minus_infinity(const Arena& arena) {
  auto attr = compute_attractor(arena, {target_of(arena)});
  std::vector<VertexId> map;
  Arena sub = induced_subarena(arena, attr.attracted, &map);
  auto signs = mp_sign(sub);
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < signs.size(); ++i)
    if (signs[i] == Sign::Negative) out.push_back(map[i]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qg
