#include "qg/accel.hpp"

#include <algorithm>
#include <chrono>
#include <queue>
#include <tuple>

#include "qg/sweep.hpp"

namespace qg {

SccDecomposition scc_decompose(const Arena& arena) {
  const std::size_t n = arena.num_vertices();
  constexpr std::uint32_t kUnset = UINT32_MAX;
  std::vector<std::uint32_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<std::uint8_t> on_stack(n, 0);
  std::vector<VertexId> stack;
  std::vector<std::pair<VertexId, std::size_t>> call;  // (vertex, next successor position)
  std::uint32_t counter = 0, ncomp = 0;

  for (VertexId root = 0; root < static_cast<VertexId>(n); ++root) {
    if (index[static_cast<std::size_t>(root)] != kUnset) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      auto vi = static_cast<std::size_t>(v);
      if (pos == 0 && index[vi] == kUnset) {
        index[vi] = low[vi] = counter++;
        stack.push_back(v);
        on_stack[vi] = 1;
      }
      auto succ = arena.successors(v);
      if (pos < succ.size()) {
        VertexId s = succ[pos++];
        auto si = static_cast<std::size_t>(s);
        if (index[si] == kUnset) {
          call.emplace_back(s, 0);
        } else if (on_stack[si]) {
          low[vi] = std::min(low[vi], index[si]);
        }
        continue;
      }
      if (low[vi] == index[vi]) {
        VertexId x;
        do {
          x = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(x)] = 0;
          comp[static_cast<std::size_t>(x)] = ncomp;
        } while (x != v);
        ++ncomp;
      }
      VertexId done = v;
      call.pop_back();
      if (!call.empty()) {
        auto pi = static_cast<std::size_t>(call.back().first);
        low[pi] = std::min(low[pi], low[static_cast<std::size_t>(done)]);
      }
    }
  }

  // Canonical renumbering over the condensation.
  std::vector<std::vector<VertexId>> members(ncomp);
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) members[comp[static_cast<std::size_t>(v)]].push_back(v);
  std::vector<std::vector<std::uint32_t>> preds(ncomp);
  std::vector<std::size_t> pending(ncomp, 0);
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    std::uint32_t cv = comp[static_cast<std::size_t>(v)];
    for (VertexId s : arena.successors(v)) {
      std::uint32_t cs = comp[static_cast<std::size_t>(s)];
      if (cs == cv) continue;
      preds[cs].push_back(cv);
      ++pending[cv];
    }
  }
  auto key = [&](std::uint32_t c) {
    bool has_target = std::any_of(members[c].begin(), members[c].end(), [&](VertexId v) { return arena.is_target(v); });
    return std::make_tuple(has_target ? 0 : 1, members[c].front(), c);
  };
  using Key = decltype(key(0));
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  for (std::uint32_t c = 0; c < ncomp; ++c)
    if (pending[c] == 0) ready.push(key(c));

  SccDecomposition out;
  out.dec.assign(n, 0);
  while (!ready.empty()) {
    std::uint32_t c = std::get<2>(ready.top());
    ready.pop();
    auto q = static_cast<std::uint32_t>(out.components.size());
    for (VertexId v : members[c]) out.dec[static_cast<std::size_t>(v)] = q;
    out.components.push_back(members[c]);
    for (std::uint32_t p : preds[c])
      if (--pending[p] == 0) ready.push(key(p));
  }
  return out;
}

std::vector<PathCandidates> simple_path_oracle(const Arena& arena, const SccDecomposition& dec, std::uint32_t q,
                                               const ValueVector& finalized, std::size_t cap) {
  const auto& members = dec.components[q];
  std::vector<PathCandidates> out(members.size());
  std::vector<std::uint8_t> on_path(arena.num_vertices(), 0);
  for (std::size_t m = 0; m < members.size(); ++m) {
    PathCandidates& c = out[m];
    std::size_t produced = 0;
    bool over = false;
    // Depth-first enumeration of simple paths from members[m].
    std::vector<std::tuple<VertexId, std::size_t, std::int64_t>> frames;
    frames.emplace_back(members[m], 0, 0);
    on_path[static_cast<std::size_t>(members[m])] = 1;
    c.sums.push_back(0);
    while (!frames.empty() && !over) {
      auto& [u, pos, sum] = frames.back();
      auto succ = arena.successors(u);
      if (pos == succ.size()) {
        on_path[static_cast<std::size_t>(u)] = 0;
        frames.pop_back();
        continue;
      }
      VertexId x = succ[pos];
      std::int64_t s = sum + arena.weights(u)[pos];
      ++pos;
      if (++produced > cap) {
        over = true;
        break;
      }
      if (dec.dec[static_cast<std::size_t>(x)] != q) {
        c.exits.push_back(ExtValue(s) + finalized[static_cast<std::size_t>(x)]);
        continue;
      }
      c.steps.emplace_back(s, x);
      if (!on_path[static_cast<std::size_t>(x)]) {
        c.sums.push_back(s);
        on_path[static_cast<std::size_t>(x)] = 1;
        frames.emplace_back(x, 0, s);
      }
    }
    for (auto& [u, pos, sum] : frames) on_path[static_cast<std::size_t>(u)] = 0;
    if (over) return {};
    std::sort(c.exits.begin(), c.exits.end());
    c.exits.erase(std::unique(c.exits.begin(), c.exits.end()), c.exits.end());
    std::sort(c.sums.begin(), c.sums.end());
    c.sums.erase(std::unique(c.sums.begin(), c.sums.end()), c.sums.end());
    std::sort(c.steps.begin(), c.steps.end());
    c.steps.erase(std::unique(c.steps.begin(), c.steps.end()), c.steps.end());
  }
  return out;
}

std::vector<ExtValue> exit_candidate_set(const PathCandidates& c) {
  std::vector<ExtValue> s = c.exits;
  s.push_back(ExtValue::neg_inf());
  s.push_back(ExtValue::pos_inf());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

namespace {

// Greatest element of the sorted set that is <= x (the set holds -inf).
ExtValue round_down(const std::vector<ExtValue>& set, ExtValue x) {
  auto it = std::upper_bound(set.begin(), set.end(), x);
  return *std::prev(it);
}

// Smallest element of the sorted set that is >= x (the set holds +inf).
ExtValue round_up(const std::vector<ExtValue>& set, ExtValue x) { return *std::lower_bound(set.begin(), set.end(), x); }

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

McrResult solve_mcr_accelerated(const Arena& arena, const AccelOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const VertexId t = target_of(arena);
  const std::size_t n = arena.num_vertices();
  const SccDecomposition dec = scc_decompose(arena);

  McrResult r;
  ValueVector cur(n, ExtValue::pos_inf());
  cur[static_cast<std::size_t>(t)] = 0;
  ValueVector nxt = cur;
  const std::int64_t cutoff = cutoff_threshold(arena);

  for (std::uint32_t q = 0; q < dec.components.size(); ++q) {
    const auto& members = dec.components[q];
    if (members.size() == 1 && members[0] == t) continue;
    std::vector<std::vector<ExtValue>> sets;
    if (opts.oracle == OracleKind::SimplePaths) {
      for (const auto& c : simple_path_oracle(arena, dec, q, cur, opts.path_cap)) sets.push_back(exit_candidate_set(c));
    }
    for (std::size_t m = 0; m < members.size(); ++m) {
      auto v = static_cast<std::size_t>(members[m]);
      cur[v] = nxt[v] = sets.empty() ? ExtValue::pos_inf() : sets[m].back();
    }
    SweepSpec spec{&arena, members, nullptr, cutoff};
    while (true) {
      ++r.stats.sweeps;
      sweep(spec, cur, nxt, opts.exec);
      bool changed = false;
      for (std::size_t m = 0; m < members.size(); ++m) {
        auto v = static_cast<std::size_t>(members[m]);
        if (!sets.empty()) nxt[v] = round_down(sets[m], nxt[v]);
        changed = changed || nxt[v] != cur[v];
      }
      std::swap(cur, nxt);
      if (!changed) break;
    }
    for (VertexId v : members) nxt[static_cast<std::size_t>(v)] = cur[static_cast<std::size_t>(v)];
  }
  r.values = std::move(cur);
  r.stats.inner_iterations = r.stats.sweeps;
  r.stats.outer_iterations = 1;
  r.stats.wall_ms = elapsed_ms(start);
  return r;
}

TpResult solve_tp_accelerated(const Arena& arena, const AccelOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = arena.num_vertices();
  const SccDecomposition dec = scc_decompose(arena);
  const std::int64_t threshold = cutoff_threshold(arena);

  TpResult r;
  ValueVector Y(n, ExtValue::neg_inf());
  ValueVector X(n, ExtValue::pos_inf());
  ValueVector Xnext = X;

  for (std::uint32_t q = 0; q < dec.components.size(); ++q) {
    const auto& members = dec.components[q];
    const std::size_t m_count = members.size();
    std::vector<PathCandidates> cands;
    if (opts.oracle == OracleKind::SimplePaths) cands = simple_path_oracle(arena, dec, q, Y, opts.path_cap);
    const bool clamp = !cands.empty();

    // Candidates for the final value: in-component path sums and exits.
    std::vector<std::vector<ExtValue>> final_sets(clamp ? m_count : 0);
    for (std::size_t m = 0; clamp && m < m_count; ++m) {
      auto& s = final_sets[m];
      s = exit_candidate_set(cands[m]);
      for (std::int64_t x : cands[m].sums) s.push_back(x);
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }

    SweepSpec spec{&arena, members, Y.data(), threshold};
    std::vector<ExtValue> Ypre(m_count);
    std::vector<std::vector<ExtValue>> inner_sets(clamp ? m_count : 0);
    while (true) {
      ++r.stats.outer_iterations;
      for (std::size_t m = 0; m < m_count; ++m) {
        auto v = static_cast<std::size_t>(members[m]);
        Ypre[m] = Y[v];
        Y[v] = std::max(Y[v], ExtValue(0));
      }
      // Candidates for one outer step: exits, or stopping at an in-component vertex x for max(0, Y(x)).
      for (std::size_t m = 0; clamp && m < m_count; ++m) {
        auto& s = inner_sets[m];
        s = exit_candidate_set(cands[m]);
        for (const auto& [sum, x] : cands[m].steps) {
          const ExtValue& y = Y[static_cast<std::size_t>(x)];
          if (!y.is_pos_inf()) s.push_back(ExtValue(sum) + y);
        }
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
      }
      for (VertexId v : members) X[static_cast<std::size_t>(v)] = Xnext[static_cast<std::size_t>(v)] = ExtValue::pos_inf();
      while (true) {
        ++r.stats.inner_iterations;
        sweep(spec, X, Xnext, opts.exec);
        bool changed = false;
        for (std::size_t m = 0; m < m_count; ++m) {
          auto v = static_cast<std::size_t>(members[m]);
          if (clamp) Xnext[v] = round_down(inner_sets[m], Xnext[v]);
          changed = changed || Xnext[v] != X[v];
        }
        std::swap(X, Xnext);
        if (!changed) break;
      }
      bool stable = true;
      for (std::size_t m = 0; m < m_count; ++m) {
        auto v = static_cast<std::size_t>(members[m]);
        Y[v] = X[v];
        if (Y[v].is_finite() && Y[v].raw() > threshold) Y[v] = ExtValue::pos_inf();
        if (clamp) Y[v] = round_up(final_sets[m], Y[v]);
        stable = stable && Y[v] == Ypre[m];
      }
      if (stable) break;
    }
    for (VertexId v : members) X[static_cast<std::size_t>(v)] = Xnext[static_cast<std::size_t>(v)] = Y[static_cast<std::size_t>(v)];
  }
  r.stats.sweeps = r.stats.inner_iterations;
  r.values = std::move(Y);
  r.stats.wall_ms = elapsed_ms(start);
  return r;
}

}  // namespace qg
