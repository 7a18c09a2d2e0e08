#include "qg/oracle.hpp"

#include <algorithm>

namespace qg {

std::int64_t tp_of_prefix(const Arena& arena, std::span<const VertexId> play) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i + 1 < play.size(); ++i) {
    auto w = arena.edge_weight(play[i], play[i + 1]);
    if (!w) throw Error(ErrorCode::InvalidArgument, "play uses a missing edge");
    if (__builtin_add_overflow(sum, *w, &sum)) throw Error(ErrorCode::Overflow, "prefix sum overflow");
  }
  return sum;
}

std::vector<VertexId> lasso_vertices(const Lasso& lasso) {
  std::vector<VertexId> seq = lasso.prefix;
  seq.insert(seq.end(), lasso.cycle.begin(), lasso.cycle.end());
  return seq;
}

namespace {

std::int64_t cycle_sum(const Arena& arena, const Lasso& lasso) {
  std::vector<VertexId> closed = lasso.cycle;
  closed.push_back(lasso.cycle.front());
  return tp_of_prefix(arena, closed);
}

}  // namespace

ExtValue payoff_of_lasso(const Arena& arena, const Lasso& lasso, PayoffKind kind) {
  if (lasso.cycle.empty()) throw Error(ErrorCode::InvalidArgument, "lasso cycle is empty");
  std::vector<VertexId> seq = lasso_vertices(lasso);
  if (kind == PayoffKind::MCR) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (i > 0) sum += *arena.edge_weight(seq[i - 1], seq[i]);
      if (arena.is_target(seq[i])) return sum;
    }
    return ExtValue::pos_inf();
  }
  const std::int64_t c = cycle_sum(arena, lasso);
  if (c > 0) return ExtValue::pos_inf();
  if (c < 0) return ExtValue::neg_inf();
  // Zero cycle: the liminf is reached at the lowest point of one period.
  std::int64_t sum = tp_of_prefix(arena, std::span(seq).first(lasso.prefix.size() + 1));
  std::int64_t low = sum;
  for (std::size_t i = lasso.prefix.size() + 1; i < seq.size(); ++i) {
    sum += *arena.edge_weight(seq[i - 1], seq[i]);
    low = std::min(low, sum);
  }
  return low;
}

Rational mean_payoff_of_lasso(const Arena& arena, const Lasso& lasso) {
  if (lasso.cycle.empty()) throw Error(ErrorCode::InvalidArgument, "lasso cycle is empty");
  return {cycle_sum(arena, lasso), static_cast<std::int64_t>(lasso.cycle.size())};
}

Lasso memoryless_lasso(const Arena& arena, const MemorylessStrategy& max, const MemorylessStrategy& min,
                       VertexId start) {
  std::vector<std::int64_t> pos(arena.num_vertices(), -1);
  std::vector<VertexId> seq;
  VertexId v = start;
  while (pos[static_cast<std::size_t>(v)] < 0) {
    pos[static_cast<std::size_t>(v)] = static_cast<std::int64_t>(seq.size());
    seq.push_back(v);
    v = arena.owner(v) == Player::Max ? max(v) : min(v);
  }
  auto cut = static_cast<std::size_t>(pos[static_cast<std::size_t>(v)]);
  return {std::vector<VertexId>(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(cut)),
          std::vector<VertexId>(seq.begin() + static_cast<std::ptrdiff_t>(cut), seq.end())};
}

MemorylessEnumerator::MemorylessEnumerator(const Arena& arena, Player player) : arena_(&arena) {
  current_.player = player;
  current_.choice.assign(arena.num_vertices(), kNoVertex);
  for (VertexId v = 0; v < static_cast<VertexId>(arena.num_vertices()); ++v) {
    if (arena.owner(v) != player) continue;
    owned_.push_back(v);
    current_.choice[static_cast<std::size_t>(v)] = arena.successors(v)[0];
    const auto d = static_cast<std::uint64_t>(arena.out_degree(v));
    if (count_ > kMaxEnumeratedStrategies / d) {
      throw Error(ErrorCode::TooManyStrategies, "more than 10^7 memoryless strategies");
    }
    count_ *= d;
  }
  digit_.assign(owned_.size(), 0);
}

bool MemorylessEnumerator::next() {
  for (std::size_t k = owned_.size(); k-- > 0;) {
    VertexId v = owned_[k];
    auto succ = arena_->successors(v);
    if (++digit_[k] < succ.size()) {
      current_.choice[static_cast<std::size_t>(v)] = succ[digit_[k]];
      return true;
    }
    digit_[k] = 0;
    current_.choice[static_cast<std::size_t>(v)] = succ[0];
  }
  return false;
}

std::uint64_t count_memoryless(const Arena& arena, Player player) { return MemorylessEnumerator(arena, player).count(); }

ValueVector mcr_min_response(const Arena& arena, const MemorylessStrategy& max) {
  const std::size_t n = arena.num_vertices();
  ValueVector d(n, ExtValue::pos_inf());
  for (VertexId t : arena.targets()) d[static_cast<std::size_t>(t)] = 0;
  auto relax_all = [&](bool mark_negative) {
    bool any = false;
    for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
      if (arena.is_target(v)) continue;
      auto succ = arena.successors(v);
      auto w = arena.weights(v);
      for (std::size_t i = 0; i < succ.size(); ++i) {
        if (arena.owner(v) == Player::Max && succ[i] != max(v)) continue;
        const ExtValue& du = d[static_cast<std::size_t>(succ[i])];
        if (du.is_pos_inf()) continue;
        ExtValue cand = du.is_neg_inf() ? du : ExtValue(w[i] + du.raw());
        ExtValue& dv = d[static_cast<std::size_t>(v)];
        if (cand < dv) {
          dv = mark_negative ? ExtValue::neg_inf() : cand;
          any = true;
        }
      }
    }
    return any;
  };
  for (std::size_t round = 0; round + 1 < n; ++round)
    if (!relax_all(false)) return d;
  for (std::size_t round = 0; round < n; ++round)
    if (!relax_all(true)) break;
  return d;
}

ValueVector mcr_oracle(const Arena& arena) {
  if (arena.targets().empty()) throw Error(ErrorCode::EmptyTargetForMCR, "mcr_oracle needs targets");
  ValueVector best(arena.num_vertices(), ExtValue::neg_inf());
  MemorylessEnumerator e(arena, Player::Max);
  do {
    ValueVector d = mcr_min_response(arena, e.current());
    for (std::size_t v = 0; v < best.size(); ++v) best[v] = std::max(best[v], d[v]);
  } while (e.next());
  return best;
}

namespace {

template <typename T, typename Eval>
std::vector<T> max_min(const Arena& arena, Eval eval, T low, T high) {
  const std::size_t n = arena.num_vertices();
  std::vector<T> best(n, low);
  MemorylessEnumerator emax(arena, Player::Max);
  do {
    std::vector<T> worst(n, high);
    MemorylessEnumerator emin(arena, Player::Min);
    do {
      for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
        T p = eval(memoryless_lasso(arena, emax.current(), emin.current(), v));
        worst[static_cast<std::size_t>(v)] = std::min(worst[static_cast<std::size_t>(v)], p);
      }
    } while (emin.next());
    for (std::size_t v = 0; v < n; ++v) best[v] = std::max(best[v], worst[v]);
  } while (emax.next());
  return best;
}

}  // namespace

ValueVector tp_oracle(const Arena& arena) {
  return max_min<ExtValue>(
      arena, [&](const Lasso& l) { return payoff_of_lasso(arena, l, PayoffKind::TP); }, ExtValue::neg_inf(),
      ExtValue::pos_inf());
}

std::vector<Rational> mp_oracle(const Arena& arena) {
  const Weight W = max_abs_weight(arena) + 1;
  return max_min<Rational>(
      arena, [&](const Lasso& l) { return mean_payoff_of_lasso(arena, l); }, Rational{-W, 1}, Rational{W, 1});
}

ValueVector tp_oracle_fixed(const Arena& arena, const MemorylessStrategy& fixed) {
  const std::size_t n = arena.num_vertices();
  const bool fixed_max = fixed.player == Player::Max;
  ValueVector best(n, fixed_max ? ExtValue::pos_inf() : ExtValue::neg_inf());
  MemorylessEnumerator e(arena, opponent(fixed.player));
  do {
    for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
      Lasso l = fixed_max ? memoryless_lasso(arena, fixed, e.current(), v)
                          : memoryless_lasso(arena, e.current(), fixed, v);
      ExtValue p = payoff_of_lasso(arena, l, PayoffKind::TP);
      auto& b = best[static_cast<std::size_t>(v)];
      b = fixed_max ? std::min(b, p) : std::max(b, p);
    }
  } while (e.next());
  return best;
}

Arena random_arena(const RandomArenaSpec& spec, std::mt19937_64& rng) {
  auto uniform = [&](std::uint64_t lo, std::uint64_t hi) { return lo + rng() % (hi - lo + 1); };
  const std::size_t n = uniform(spec.min_vertices, spec.max_vertices);
  ArenaBuilder b(spec.objective);
  for (std::size_t v = 0; v < n; ++v) {
    b.add_vertex("v" + std::to_string(v + 1), rng() % 2 ? Player::Max : Player::Min);
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<VertexId> pool(n);
    for (std::size_t u = 0; u < n; ++u) pool[u] = static_cast<VertexId>(u);
    const std::size_t d = uniform(1, std::min(spec.max_out_degree, n));
    for (std::size_t k = 0; k < d; ++k) {
      std::size_t j = uniform(k, n - 1);
      std::swap(pool[k], pool[j]);
      auto w = static_cast<Weight>(uniform(0, static_cast<std::uint64_t>(2 * spec.max_weight))) - spec.max_weight;
      b.add_edge(static_cast<VertexId>(v), pool[k], w);
    }
  }
  if (spec.objective == Objective::MCR) {
    bool any = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (rng() % 3 == 0) {
        b.set_target(static_cast<VertexId>(v));
        any = true;
      }
    }
    if (!any) b.set_target(static_cast<VertexId>(uniform(0, n - 1)));
  }
  return b.build();
}

}  // namespace qg
