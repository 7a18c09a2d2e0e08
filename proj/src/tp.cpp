#include "qg/tp.hpp"

#include <chrono>

#include "qg/sweep.hpp"

namespace qg {

std::uint64_t k_bound(const Arena& arena) {
  const auto n = static_cast<std::uint64_t>(arena.num_vertices());
  const auto w = static_cast<std::uint64_t>(max_abs_weight(arena));
  return n * (2 * (n - 1) * w + 1);
}

TpResult solve_tp(const Arena& arena, const SolveOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = arena.num_vertices();
  const std::int64_t threshold = cutoff_threshold(arena);
  const std::uint64_t K = k_bound(arena);

  std::vector<VertexId> active(n);
  for (std::size_t v = 0; v < n; ++v) active[v] = static_cast<VertexId>(v);

  TpResult r;
  ValueVector Y(n, ExtValue::neg_inf());
  ValueVector Ypre(n);
  ValueVector X(n), Xnext(n);
  SweepSpec spec{&arena, active, Y.data(), threshold};
  while (true) {
    ++r.stats.outer_iterations;
    if (r.stats.outer_iterations > K + 1) throw Error(ErrorCode::CapExceeded, "outer pass bound exceeded");
    Ypre = Y;
    for (auto& y : Y) y = std::max(y, ExtValue(0));
    std::fill(X.begin(), X.end(), ExtValue::pos_inf());
    while (true) {
      ++r.stats.inner_iterations;
      bool changed = sweep(spec, X, Xnext, opts.exec);
      std::swap(X, Xnext);
      if (!changed) break;
    }
    for (std::size_t v = 0; v < n; ++v) {
      Y[v] = X[v];
      if (Y[v].is_finite() && Y[v].raw() > threshold) Y[v] = ExtValue::pos_inf();
    }
    if (Y == Ypre) break;
  }
  r.stats.sweeps = r.stats.inner_iterations;
  r.values = std::move(Y);
  r.stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Arena build_game_Y(const Arena& arena, const ValueVector& Y) {
  ArenaBuilder b(Objective::MCR);
  const auto n = static_cast<VertexId>(arena.num_vertices());
  for (VertexId v = 0; v < n; ++v) b.add_vertex(arena.name(v), arena.owner(v), false);
  for (VertexId v = 0; v < n; ++v) b.add_vertex(b.fresh_name("in_" + arena.name(v)), Player::Min, false);
  VertexId t = b.add_vertex(b.fresh_name("t"), Player::Max, true);
  for (const Edge& e : arena.edges()) b.add_edge(e.src, n + e.dst, e.weight);
  for (VertexId v = 0; v < n; ++v) {
    b.add_edge(n + v, v, 0);
    const ExtValue& y = Y[static_cast<std::size_t>(v)];
    if (!y.is_pos_inf()) b.add_edge(n + v, t, y.is_finite() ? std::max<std::int64_t>(0, y.raw()) : 0);
  }
  b.add_edge(t, t, 0);
  return b.build();
}

Unfolding build_unfolding(const Arena& arena, std::size_t copies) {
  if (copies < 1) throw Error(ErrorCode::InvalidArgument, "unfolding depth must be positive");
  const std::size_t n = arena.num_vertices();
  if (copies * 3 * n + 1 > vertex_cap()) throw Error(ErrorCode::CapExceeded, "unfolding exceeds the vertex cap");
  ArenaBuilder b(Objective::MCR);
  const auto N = static_cast<VertexId>(n);
  auto base = [&](std::size_t j) { return static_cast<VertexId>((j - 1) * 3 * n); };
  for (std::size_t j = 1; j <= copies; ++j) {
    const std::string suffix = "_" + std::to_string(j);
    for (VertexId v = 0; v < N; ++v) b.add_vertex(b.fresh_name(arena.name(v) + suffix), arena.owner(v));
    for (VertexId v = 0; v < N; ++v) b.add_vertex(b.fresh_name("in_" + arena.name(v) + suffix), Player::Min);
    for (VertexId v = 0; v < N; ++v) b.add_vertex(b.fresh_name("ex_" + arena.name(v) + suffix), Player::Max);
  }
  VertexId t = b.add_vertex(b.fresh_name("t"), Player::Max, true);
  for (std::size_t j = 1; j <= copies; ++j) {
    const VertexId copy = base(j), in = copy + N, ex = copy + 2 * N;
    for (const Edge& e : arena.edges()) b.add_edge(copy + e.src, in + e.dst, e.weight);
    for (VertexId v = 0; v < N; ++v) {
      b.add_edge(in + v, copy + v, 0);
      b.add_edge(in + v, ex + v, 0);
      b.add_edge(ex + v, t, 0);
      if (j > 1) b.add_edge(ex + v, base(j - 1) + v, 0);
    }
  }
  b.add_edge(t, t, 0);
  Unfolding u{b.build(), {}};
  for (VertexId v = 0; v < N; ++v) u.top.push_back(base(copies) + v);
  return u;
}

std::vector<TpClass> classify_tp_infinities(const Arena& arena) {
  auto signs = mp_sign(arena);
  std::vector<TpClass> out(signs.size(), TpClass::Finite);
  for (std::size_t v = 0; v < signs.size(); ++v) {
    if (signs[v] == Sign::Positive) out[v] = TpClass::PosInf;
    if (signs[v] == Sign::Negative) out[v] = TpClass::NegInf;
  }
  return out;
}

}  // namespace qg
