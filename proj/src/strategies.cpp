#include "qg/strategies.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>

#include "qg/attractor.hpp"
#include "qg/error.hpp"
#include "qg/tp.hpp"

namespace qg {
namespace {

std::size_t idx(VertexId v) { return static_cast<std::size_t>(v); }

VertexId first_successor(const Arena& arena, VertexId v) { return arena.successors(v).front(); }

// Runs value iteration with the -inf cutoff and records, for every Min vertex,
// the argmin of the last sweep in which its value changed.
std::vector<VertexId> replay_sigma1(const Arena& arena) {
  const std::size_t n = arena.num_vertices();
  const std::int64_t cutoff = cutoff_threshold(arena);
  const std::uint64_t bound = mcr_sweep_bound(arena);
  std::vector<VertexId> choice(n, kNoVertex);
  ValueVector prev(n, ExtValue::pos_inf());
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    if (arena.is_target(v)) prev[idx(v)] = 0;
  }
  ValueVector next = prev;
  for (std::uint64_t sweep = 0;; ++sweep) {
    if (sweep > bound) throw Error(ErrorCode::CapExceeded, "sweep bound exceeded while replaying");
    bool changed = false;
    for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
      if (arena.is_target(v)) continue;
      auto succ = arena.successors(v);
      auto w = arena.weights(v);
      const bool is_max = arena.owner(v) == Player::Max;
      ExtValue best = is_max ? ExtValue::neg_inf() : ExtValue::pos_inf();
      VertexId arg = succ.front();
      for (std::size_t i = 0; i < succ.size(); ++i) {
        ExtValue c = ExtValue(w[i]) + prev[idx(succ[i])];
        if (i == 0 || (is_max ? c > best : c < best)) {
          best = c;
          arg = succ[i];
        }
      }
      if (best.is_finite() && best.raw() < -cutoff) best = ExtValue::neg_inf();
      next[idx(v)] = best;
      if (best != prev[idx(v)]) {
        changed = true;
        if (!is_max) choice[idx(v)] = arg;
      }
    }
    std::swap(prev, next);
    if (!changed) break;
  }
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    if (arena.owner(v) == Player::Min && choice[idx(v)] == kNoVertex) choice[idx(v)] = first_successor(arena, v);
  }
  return choice;
}

std::vector<VertexId> attractor_targets(const Arena& arena) { return arena.targets(); }

}  // namespace

MemorylessStrategy extract_max_memoryless(const Arena& arena, const ValueVector& values) {
  const std::size_t n = arena.num_vertices();
  if (values.size() != n) throw Error(ErrorCode::InvalidArgument, "value vector size mismatch");
  MemorylessStrategy s{Player::Max, std::vector<VertexId>(n, kNoVertex)};
  std::optional<AttractorResult> att;
  if (arena.objective() == Objective::MCR) att = compute_attractor(arena, attractor_targets(arena));
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    if (arena.owner(v) != Player::Max) continue;
    if (arena.is_target(v) && arena.objective() == Objective::MCR) {
      s.choice[idx(v)] = first_successor(arena, v);
      continue;
    }
    if (att && values[idx(v)].is_pos_inf() && att->max_avoid[idx(v)] != kNoVertex) {
      s.choice[idx(v)] = att->max_avoid[idx(v)];
      continue;
    }
    auto succ = arena.successors(v);
    auto w = arena.weights(v);
    ExtValue best = ExtValue::neg_inf();
    VertexId arg = succ.front();
    for (std::size_t i = 0; i < succ.size(); ++i) {
      ExtValue c = ExtValue(w[i]) + values[idx(succ[i])];
      if (c > best) {
        best = c;
        arg = succ[i];
      }
    }
    s.choice[idx(v)] = arg;
  }
  return s;
}

CounterStrategy::CounterStrategy(const Arena& arena, std::shared_ptr<const IterationTrace> trace)
    : arena_(&arena), trace_(std::move(trace)) {
  if (!trace_ || trace_->size() < 2) throw Error(ErrorCode::MissingTrace, "counter strategy needs a full trace");
  k_ = trace_->size() - 2;
}

Memory CounterStrategy::update(const Memory& m, VertexId) const {
  return {std::min<std::int64_t>(m.a + 1, static_cast<std::int64_t>(k_)), 0};
}

VertexId CounterStrategy::decide(const Memory& m, VertexId v) const {
  const auto a = static_cast<std::uint64_t>(m.a);
  const ValueVector& x = a < k_ ? (*trace_)[k_ - a - 1] : (*trace_)[0];
  auto succ = arena_->successors(v);
  auto w = arena_->weights(v);
  ExtValue best = ExtValue::pos_inf();
  VertexId arg = succ.front();
  for (std::size_t i = 0; i < succ.size(); ++i) {
    ExtValue c = ExtValue(w[i]) + x[idx(succ[i])];
    if (c < best) {
      best = c;
      arg = succ[i];
    }
  }
  return arg;
}

MinMcrStrategies extract_min_mcr(const Arena& arena, const McrResult& solved) {
  if (!solved.trace) throw Error(ErrorCode::MissingTrace, "strategy extraction needs a solve with trace recording");
  const std::size_t n = arena.num_vertices();
  MinMcrStrategies out;
  out.sigma1 = {Player::Min, replay_sigma1(arena)};
  out.sigma2 = {Player::Min, compute_attractor(arena, attractor_targets(arena)).min_reach};
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    if (arena.owner(v) != Player::Min) {
      out.sigma1.choice[idx(v)] = kNoVertex;
      out.sigma2.choice[idx(v)] = kNoVertex;
      continue;
    }
    if (out.sigma1.choice[idx(v)] == kNoVertex) out.sigma1.choice[idx(v)] = first_successor(arena, v);
    if (out.sigma2.choice[idx(v)] == kNoVertex) out.sigma2.choice[idx(v)] = first_successor(arena, v);
  }
  out.sigma_star = std::make_shared<CounterStrategy>(arena, std::make_shared<const IterationTrace>(*solved.trace));
  return out;
}

ValueVector sigma2_values(const Arena& arena, const MemorylessStrategy& sigma2) {
  const std::size_t n = arena.num_vertices();
  AttractorResult att = compute_attractor(arena, attractor_targets(arena));
  std::vector<VertexId> order = att.members();
  std::stable_sort(order.begin(), order.end(), [&](VertexId x, VertexId y) { return att.rank[idx(x)] < att.rank[idx(y)]; });
  ValueVector val(n, ExtValue::pos_inf());
  for (VertexId v : order) {
    if (att.rank[idx(v)] == 0) {
      val[idx(v)] = 0;
      continue;
    }
    auto succ = arena.successors(v);
    auto w = arena.weights(v);
    if (arena.owner(v) == Player::Min) {
      VertexId u = sigma2(v);
      if (att.rank[idx(u)] < 0 || att.rank[idx(u)] >= att.rank[idx(v)]) {
        throw Error(ErrorCode::InvalidArgument, "sigma2 does not decrease the attractor rank");
      }
      val[idx(v)] = ExtValue(*arena.edge_weight(v, u)) + val[idx(u)];
    } else {
      ExtValue best = ExtValue::neg_inf();
      for (std::size_t i = 0; i < succ.size(); ++i) best = std::max(best, ExtValue(w[i]) + val[idx(succ[i])]);
      val[idx(v)] = best;
    }
  }
  return val;
}

SwitchingStrategy::SwitchingStrategy(const Arena& arena, MemorylessStrategy sigma1, MemorylessStrategy sigma2,
                                     ValueVector values, std::int64_t threshold)
    : arena_(&arena),
      sigma1_(std::move(sigma1)),
      sigma2_(std::move(sigma2)),
      values_(std::move(values)),
      sigma2_values_(sigma2_values(arena, sigma2_)),
      threshold_(threshold) {}

Memory SwitchingStrategy::check(VertexId v, std::int64_t budget) const {
  const ExtValue& s2 = sigma2_values_[idx(v)];
  if (s2.is_finite() && budget >= s2.raw()) return {-1, 0};
  return {v, budget};
}

Memory SwitchingStrategy::initial(VertexId v0) const {
  const ExtValue& val = values_[idx(v0)];
  // Every strategy is optimal from a +inf vertex.
  if (val.is_pos_inf()) return {-1, 0};
  return check(v0, val.is_finite() ? val.raw() : threshold_);
}

Memory SwitchingStrategy::update(const Memory& m, VertexId v) const {
  if (switched(m)) return m;
  std::int64_t budget = 0;
  if (__builtin_sub_overflow(m.b, *arena_->edge_weight(static_cast<VertexId>(m.a), v), &budget)) {
    throw Error(ErrorCode::Overflow, "switching budget out of range");
  }
  return check(v, budget);
}

VertexId SwitchingStrategy::decide(const Memory& m, VertexId v) const {
  return switched(m) ? sigma2_(v) : sigma1_(v);
}

std::int64_t default_switch_threshold(const Arena& arena) { return -cutoff_threshold(arena) - 1; }

std::shared_ptr<SwitchingStrategy> make_switching(const MemorylessStrategy& sigma1, const MemorylessStrategy& sigma2,
                                                  const ValueVector& values, const Arena& arena,
                                                  std::optional<std::int64_t> threshold) {
  return std::make_shared<SwitchingStrategy>(arena, sigma1, sigma2, values,
                                             threshold.value_or(default_switch_threshold(arena)));
}

MemorylessStrategy project_tp_min(const Arena& arena, const MemorylessStrategy& gy_sigma1) {
  const auto n = static_cast<VertexId>(arena.num_vertices());
  MemorylessStrategy s{Player::Min, std::vector<VertexId>(arena.num_vertices(), kNoVertex)};
  for (VertexId v = 0; v < n; ++v) {
    if (arena.owner(v) != Player::Min) continue;
    VertexId c = gy_sigma1(v);
    if (c < n || c >= 2 * n) throw Error(ErrorCode::InvalidArgument, "strategy does not enter an interior vertex");
    s.choice[idx(v)] = c - n;
  }
  return s;
}


namespace {

// Inside `region`, picks for `player` a memoryless strategy under which every
// cycle has weight >= 1 (Max) or <= -1 (Min). With weights +-|V|*w - 1 this is
// an energy game, solved by a progress measure.
void energy_strategy(const Arena& arena, const std::vector<std::uint8_t>& region, Player player,
                     MemorylessStrategy& s) {
  const std::size_t n = arena.num_vertices();
  const auto scale = static_cast<std::int64_t>(n) * (player == Player::Max ? 1 : -1);
  std::int64_t wmax = 0;
  std::size_t size = 0;
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    if (!region[idx(v)]) continue;
    ++size;
    for (Weight w : arena.weights(v)) wmax = std::max<std::int64_t>(wmax, std::abs(scale * w - 1));
  }
  if (size == 0) return;
  const std::int64_t bound = static_cast<std::int64_t>(size) * wmax;
  constexpr std::int64_t top = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> f(n, 0);
  auto lift = [&](std::int64_t a, Weight w) -> std::int64_t {
    if (a == top) return top;
    std::int64_t r = std::max<std::int64_t>(0, a - (scale * w - 1));
    return r > bound ? top : r;
  };
  auto mine = [&](VertexId v) { return arena.owner(v) == player; };
  auto measure = [&](VertexId v) {
    auto succ = arena.successors(v);
    auto w = arena.weights(v);
    std::int64_t best = mine(v) ? top : 0;
    for (std::size_t i = 0; i < succ.size(); ++i) {
      if (!region[idx(succ[i])]) {
        if (!mine(v)) return top;
        continue;
      }
      std::int64_t c = lift(f[idx(succ[i])], w[i]);
      best = mine(v) ? std::min(best, c) : std::max(best, c);
    }
    return best;
  };
  std::deque<VertexId> work;
  std::vector<std::uint8_t> queued(n, 0);
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    if (region[idx(v)]) {
      work.push_back(v);
      queued[idx(v)] = 1;
    }
  }
  while (!work.empty()) {
    VertexId v = work.front();
    work.pop_front();
    queued[idx(v)] = 0;
    std::int64_t m = measure(v);
    if (m <= f[idx(v)]) continue;
    f[idx(v)] = m;
    for (VertexId p : arena.predecessors(v)) {
      if (region[idx(p)] && !queued[idx(p)]) {
        queued[idx(p)] = 1;
        work.push_back(p);
      }
    }
  }
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    if (!region[idx(v)] || !mine(v)) continue;
    auto succ = arena.successors(v);
    auto w = arena.weights(v);
    std::int64_t best = top;
    s.choice[idx(v)] = kNoVertex;
    for (std::size_t i = 0; i < succ.size(); ++i) {
      if (!region[idx(succ[i])]) continue;
      std::int64_t c = lift(f[idx(succ[i])], w[i]);
      if (s.choice[idx(v)] == kNoVertex || c < best) {
        best = c;
        s.choice[idx(v)] = succ[i];
      }
    }
  }
}

// Attractor for `player` to `seed` inside `region`, using only edges accepted
// by `allowed`. `via` receives the entering successor of `player`'s vertices.
template <class Allowed>
std::vector<std::uint8_t> restricted_attractor(const Arena& arena, const std::vector<std::uint8_t>& region,
                                               const std::vector<std::uint8_t>& seed, Player player,
                                               const Allowed& allowed, std::vector<VertexId>* via) {
  const std::size_t n = arena.num_vertices();
  std::vector<std::uint8_t> in(n, 0);
  std::vector<std::size_t> count(n, 0);
  std::deque<VertexId> queue;
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    if (!region[idx(v)]) continue;
    for (VertexId u : arena.successors(v)) {
      if (region[idx(u)] && allowed(v, u)) ++count[idx(v)];
    }
    if (seed[idx(v)]) {
      in[idx(v)] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    for (VertexId v : arena.predecessors(u)) {
      if (!region[idx(v)] || in[idx(v)] || !allowed(v, u)) continue;
      if (arena.owner(v) == player) {
        if (via) (*via)[idx(v)] = u;
      } else if (--count[idx(v)] != 0) {
        continue;
      }
      in[idx(v)] = 1;
      queue.push_back(v);
    }
  }
  return in;
}

}  // namespace

MemorylessStrategy extract_min_tp(const Arena& arena, const ValueVector& values) {
  Arena gy = build_game_Y(arena, values);
  MemorylessStrategy s = project_tp_min(arena, {Player::Min, replay_sigma1(gy)});
  std::vector<std::uint8_t> ninf(arena.num_vertices(), 0);
  for (std::size_t v = 0; v < ninf.size(); ++v) ninf[v] = values[v].is_neg_inf();
  energy_strategy(arena, ninf, Player::Min, s);
  return s;
}

MemorylessStrategy extract_max_tp(const Arena& arena, const ValueVector& values) {
  const std::size_t n = arena.num_vertices();
  if (values.size() != n) throw Error(ErrorCode::InvalidArgument, "value vector size mismatch");
  MemorylessStrategy s{Player::Max, std::vector<VertexId>(n, kNoVertex)};
  auto is_max = [&](VertexId v) { return arena.owner(v) == Player::Max; };

  std::vector<std::uint8_t> pinf(n, 0);
  for (std::size_t v = 0; v < n; ++v) pinf[v] = values[v].is_pos_inf();
  energy_strategy(arena, pinf, Player::Max, s);

  // Finite region: tight edges only, and no zero-weight cycle through a
  // positive-valued vertex (a co-Buchi condition, solved by layers).
  auto tight = [&](VertexId v, VertexId u) {
    const ExtValue& vu = values[idx(u)];
    return vu.is_finite() && ExtValue(*arena.edge_weight(v, u)) + vu == values[idx(v)];
  };
  std::vector<std::uint8_t> region(n, 0);
  std::vector<std::uint8_t> positive(n, 0);
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    if (!values[idx(v)].is_finite()) continue;
    region[idx(v)] = 1;
    positive[idx(v)] = values[idx(v)].raw() > 0;
    if (is_max(v) && std::none_of(arena.successors(v).begin(), arena.successors(v).end(),
                                  [&](VertexId u) { return tight(v, u); })) {
      throw Error(ErrorCode::InvalidArgument, "values are not a fixed point: no tight edge at " + arena.name(v));
    }
  }
  std::size_t remaining = static_cast<std::size_t>(std::count(region.begin(), region.end(), 1));
  while (remaining > 0) {
    std::vector<std::uint8_t> seed(n, 0);
    for (std::size_t v = 0; v < n; ++v) seed[v] = region[v] && positive[v];
    std::vector<std::uint8_t> hit = restricted_attractor(arena, region, seed, Player::Min, tight, nullptr);
    std::vector<std::uint8_t> safe(n, 0);
    bool any = false;
    for (std::size_t v = 0; v < n; ++v) {
      safe[v] = region[v] && !hit[v];
      any = any || safe[v];
    }
    if (!any) throw Error(ErrorCode::InvalidArgument, "values are not total-payoff values");
    for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
      if (!safe[idx(v)] || !is_max(v)) continue;
      for (VertexId u : arena.successors(v)) {
        if (safe[idx(u)] && tight(v, u)) {
          s.choice[idx(v)] = u;
          break;
        }
      }
    }
    std::vector<VertexId> via(n, kNoVertex);
    std::vector<std::uint8_t> layer = restricted_attractor(arena, region, safe, Player::Max, tight, &via);
    for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
      if (!layer[idx(v)]) continue;
      if (is_max(v) && !safe[idx(v)]) s.choice[idx(v)] = via[idx(v)];
      region[idx(v)] = 0;
      --remaining;
    }
  }

  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    if (is_max(v) && s.choice[idx(v)] == kNoVertex) s.choice[idx(v)] = first_successor(arena, v);
  }
  return s;
}

namespace {

struct PlayKey {
  VertexId v;
  Memory max;
  Memory min;
  bool operator==(const PlayKey&) const = default;
};

struct PlayKeyHash {
  std::size_t operator()(const PlayKey& k) const noexcept {
    MemoryHash h;
    return (h(k.max) * 31u + h(k.min)) * 1000003u ^ std::hash<VertexId>()(k.v);
  }
};

void require_edge(const Arena& arena, VertexId v, VertexId u) {
  if (u < 0 || idx(u) >= arena.num_vertices() || !arena.edge_weight(v, u)) {
    throw Error(ErrorCode::InvalidArgument, "strategy picks a non-successor of " + arena.name(v));
  }
}

}  // namespace

PlayOutcome play_out(const Arena& arena, const MooreStrategy& max, const MooreStrategy& min, VertexId start,
                     Objective objective, std::uint64_t max_steps) {
  constexpr std::uint64_t kDefaultSteps = 10'000'000;
  std::uint64_t needed = kDefaultSteps;
  if (auto a = max.memory_size(), b = min.memory_size(); a && b) {
    unsigned __int128 prod = static_cast<unsigned __int128>(arena.num_vertices()) * *a * *b + 1;
    needed = prod > kDefaultSteps ? kDefaultSteps : static_cast<std::uint64_t>(prod);
  }
  max_steps = std::max(max_steps, needed);

  std::unordered_map<PlayKey, std::size_t, PlayKeyHash> seen;
  std::vector<VertexId> seq;
  VertexId v = start;
  Memory mx = max.initial(start);
  Memory mn = min.initial(start);
  PlayOutcome out;
  for (;;) {
    if (objective == Objective::MCR && arena.is_target(v)) {
      seq.push_back(v);
      out.reached_target = true;
      out.payoff = tp_of_prefix(arena, seq);
      out.lasso.prefix = std::move(seq);
      return out;
    }
    auto [it, fresh] = seen.emplace(PlayKey{v, mx, mn}, seq.size());
    if (!fresh) {
      auto cut = static_cast<std::ptrdiff_t>(it->second);
      out.lasso.prefix.assign(seq.begin(), seq.begin() + cut);
      out.lasso.cycle.assign(seq.begin() + cut, seq.end());
      out.payoff = payoff_of_lasso(arena, out.lasso, objective == Objective::MCR ? PayoffKind::MCR : PayoffKind::TP);
      return out;
    }
    if (seq.size() >= max_steps) throw Error(ErrorCode::StepBudgetExceeded, "play did not close a lasso");
    seq.push_back(v);
    VertexId u = arena.owner(v) == Player::Max ? max.decide(mx, v) : min.decide(mn, v);
    require_edge(arena, v, u);
    mx = max.update(mx, u);
    mn = min.update(mn, u);
    v = u;
  }
}

namespace {

struct StateKey {
  VertexId v;
  Memory m;
  bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const noexcept {
    return MemoryHash()(k.m) * 1000003u ^ std::hash<VertexId>()(k.v);
  }
};

struct Product {
  std::vector<VertexId> vertex;
  std::vector<std::uint8_t> terminal;
  std::vector<std::size_t> offset{0};
  std::vector<std::size_t> succ;
  std::vector<Weight> weight;
  std::vector<std::size_t> start;  // original vertex -> state
};

Product build_product(const Arena& arena, const MooreStrategy& fixed, std::size_t max_states) {
  Product p;
  std::unordered_map<StateKey, std::size_t, StateKeyHash> index;
  std::vector<Memory> memory;
  auto intern = [&](VertexId v, const Memory& m) {
    auto [it, fresh] = index.emplace(StateKey{v, m}, p.vertex.size());
    if (fresh) {
      if (p.vertex.size() >= max_states) throw Error(ErrorCode::CapExceeded, "product arena exceeds the state guard");
      p.vertex.push_back(v);
      memory.push_back(m);
    }
    return it->second;
  };
  for (VertexId v = 0; v < static_cast<VertexId>(arena.num_vertices()); ++v) {
    p.start.push_back(intern(v, fixed.initial(v)));
  }
  for (std::size_t s = 0; s < p.vertex.size(); ++s) {
    VertexId v = p.vertex[s];
    const Memory m = memory[s];
    const bool terminal = arena.is_target(v);
    p.terminal.push_back(terminal);
    if (!terminal) {
      if (arena.owner(v) == fixed.player()) {
        VertexId u = fixed.decide(m, v);
        require_edge(arena, v, u);
        std::size_t t = intern(u, fixed.update(m, u));
        p.succ.push_back(t);
        p.weight.push_back(*arena.edge_weight(v, u));
      } else {
        auto succ = arena.successors(v);
        auto w = arena.weights(v);
        for (std::size_t i = 0; i < succ.size(); ++i) {
          std::size_t t = intern(succ[i], fixed.update(m, succ[i]));
          p.succ.push_back(t);
          p.weight.push_back(w[i]);
        }
      }
    }
    p.offset.push_back(p.succ.size());
  }
  return p;
}

std::vector<std::vector<std::size_t>> product_predecessors(const Product& p) {
  std::vector<std::vector<std::size_t>> pred(p.vertex.size());
  for (std::size_t s = 0; s < p.vertex.size(); ++s) {
    for (std::size_t e = p.offset[s]; e < p.offset[s + 1]; ++e) pred[p.succ[e]].push_back(s);
  }
  return pred;
}

// Opponent Max maximizes: +inf where Max can avoid terminals forever; the
// remaining states are acyclic and are evaluated in removal order.
ValueVector max_response(const Product& p) {
  const std::size_t N = p.vertex.size();
  auto pred = product_predecessors(p);
  std::vector<std::size_t> count(N);
  std::vector<std::uint8_t> avoid(N, 1);
  std::vector<std::size_t> order;
  for (std::size_t s = 0; s < N; ++s) {
    count[s] = p.offset[s + 1] - p.offset[s];
    if (p.terminal[s]) {
      avoid[s] = 0;
      order.push_back(s);
    }
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (std::size_t q : pred[order[head]]) {
      if (avoid[q] && --count[q] == 0) {
        avoid[q] = 0;
        order.push_back(q);
      }
    }
  }
  ValueVector val(N, ExtValue::pos_inf());
  for (std::size_t s : order) {
    if (p.terminal[s]) {
      val[s] = 0;
      continue;
    }
    ExtValue best = ExtValue::neg_inf();
    for (std::size_t e = p.offset[s]; e < p.offset[s + 1]; ++e) {
      best = std::max(best, ExtValue(p.weight[e]) + val[p.succ[e]]);
    }
    val[s] = best;
  }
  return val;
}

// Opponent Min minimizes: shortest paths to terminals, -inf where a negative
// cycle that can still reach a terminal is reachable.
ValueVector min_response(const Product& p) {
  const std::size_t N = p.vertex.size();
  ValueVector d(N, ExtValue::pos_inf());
  for (std::size_t s = 0; s < N; ++s) {
    if (p.terminal[s]) d[s] = 0;
  }
  auto relax = [&](std::size_t s) {
    ExtValue best = d[s];
    for (std::size_t e = p.offset[s]; e < p.offset[s + 1]; ++e) {
      if (d[p.succ[e]].is_finite()) best = std::min(best, ExtValue(p.weight[e]) + d[p.succ[e]]);
    }
    return best;
  };
  for (std::size_t round = 0; round + 1 < N; ++round) {
    bool changed = false;
    for (std::size_t s = 0; s < N; ++s) {
      if (p.terminal[s]) continue;
      ExtValue b = relax(s);
      if (b < d[s]) {
        d[s] = b;
        changed = true;
      }
    }
    if (!changed) break;
  }
  auto pred = product_predecessors(p);
  std::deque<std::size_t> queue;
  for (std::size_t s = 0; s < N; ++s) {
    if (!p.terminal[s] && relax(s) < d[s]) {
      d[s] = ExtValue::neg_inf();
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    for (std::size_t q : pred[s]) {
      if (!d[q].is_neg_inf() && !p.terminal[q]) {
        d[q] = ExtValue::neg_inf();
        queue.push_back(q);
      }
    }
  }
  return d;
}

}  // namespace

ValueVector best_response(const Arena& arena, const MooreStrategy& fixed, std::size_t max_states) {
  Product p = build_product(arena, fixed, max_states);
  ValueVector val = fixed.player() == Player::Min ? max_response(p) : min_response(p);
  ValueVector out(arena.num_vertices());
  for (std::size_t v = 0; v < arena.num_vertices(); ++v) out[v] = val[p.start[v]];
  return out;
}

nlohmann::ordered_json strategy_json(const Arena& arena, const MemorylessStrategy& s) {
  nlohmann::ordered_json j;
  j["player"] = to_string(s.player);
  j["kind"] = "memoryless";
  nlohmann::ordered_json choice = nlohmann::ordered_json::object();
  for (VertexId v = 0; v < static_cast<VertexId>(s.choice.size()); ++v) {
    if (s.choice[idx(v)] != kNoVertex) choice[arena.name(v)] = arena.name(s.choice[idx(v)]);
  }
  j["choice"] = std::move(choice);
  return j;
}

nlohmann::ordered_json switching_json(const Arena& arena, const SwitchingStrategy& s) {
  nlohmann::ordered_json j;
  j["player"] = "min";
  j["kind"] = "switching";
  j["sigma1"] = strategy_json(arena, s.sigma1())["choice"];
  j["sigma2"] = strategy_json(arena, s.sigma2())["choice"];
  return j;
}

nlohmann::ordered_json counter_json(const CounterStrategy& s) {
  nlohmann::ordered_json j;
  j["player"] = "min";
  j["kind"] = "moore";
  j["memory_size"] = s.k() + 1;
  return j;
}

}  // namespace qg
