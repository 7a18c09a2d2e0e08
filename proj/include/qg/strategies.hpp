#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <json.hpp>

#include "qg/arena.hpp"
#include "qg/mcr.hpp"
#include "qg/oracle.hpp"
#include "qg/strategy.hpp"

namespace qg {

// Argmax of w(v,v') + values(v') per Max vertex, ties to the smallest index;
// +inf vertices of an MCR arena use the avoid strategy of the attractor.
MemorylessStrategy extract_max_memoryless(const Arena& arena, const ValueVector& values);

// Min's counter strategy: with k the last sweep index, at prefix length i < k
// play argmin w(v,v') + x_{k-i-1}(v'), afterwards argmin over x_0.
class CounterStrategy final : public MooreStrategy {
 public:
  CounterStrategy(const Arena& arena, std::shared_ptr<const IterationTrace> trace);
  Player player() const override { return Player::Min; }
  Memory initial(VertexId) const override { return {0, 0}; }
  Memory update(const Memory& m, VertexId) const override;
  VertexId decide(const Memory& m, VertexId v) const override;
  std::optional<std::uint64_t> memory_size() const override { return k_ + 1; }
  std::uint64_t k() const { return k_; }

 private:
  const Arena* arena_;
  std::shared_ptr<const IterationTrace> trace_;
  std::uint64_t k_;
};

struct MinMcrStrategies {
  MemorylessStrategy sigma1;
  MemorylessStrategy sigma2;
  std::shared_ptr<CounterStrategy> sigma_star;
};

// Replays the solver trace, recording sigma1(v) at every sweep where X(v)
// changes; sigma2 is the attractor reach strategy. Needs a recorded trace.
MinMcrStrategies extract_min_mcr(const Arena& arena, const McrResult& solved);

// Worst case of the memoryless Min strategy sigma2 from every vertex
// (+inf outside the target attractor).
ValueVector sigma2_values(const Arena& arena, const MemorylessStrategy& sigma2);

// Follows sigma1 while tracking the running sum, and switches for good to
// sigma2 at the first prefix v1..vk with TP(v1..vk) <= budget(v1) - Val(vk, sigma2).
// budget(v1) = values(v1), or `threshold` where values(v1) = -inf.
class SwitchingStrategy final : public MooreStrategy {
 public:
  SwitchingStrategy(const Arena& arena, MemorylessStrategy sigma1, MemorylessStrategy sigma2, ValueVector values,
                    std::int64_t threshold);
  Player player() const override { return Player::Min; }
  Memory initial(VertexId v0) const override;
  Memory update(const Memory& m, VertexId v) const override;
  VertexId decide(const Memory& m, VertexId v) const override;
  static bool switched(const Memory& m) { return m.a < 0; }

  const MemorylessStrategy& sigma1() const { return sigma1_; }
  const MemorylessStrategy& sigma2() const { return sigma2_; }

 private:
  Memory check(VertexId v, std::int64_t budget) const;

  const Arena* arena_;
  MemorylessStrategy sigma1_;
  MemorylessStrategy sigma2_;
  ValueVector values_;
  ValueVector sigma2_values_;
  std::int64_t threshold_;
};

// Default payoff threshold for -inf start vertices: just below the cutoff.
std::int64_t default_switch_threshold(const Arena& arena);

std::shared_ptr<SwitchingStrategy> make_switching(const MemorylessStrategy& sigma1, const MemorylessStrategy& sigma2,
                                                  const ValueVector& values, const Arena& arena,
                                                  std::optional<std::int64_t> threshold = std::nullopt);

// sigma-bar(v) = v' when sigma1(v) = (in, v') in build_game_Y(arena, Val).
MemorylessStrategy project_tp_min(const Arena& arena, const MemorylessStrategy& gy_sigma1);
// Solves build_game_Y(arena, values) and projects Min's sigma1; on -inf
// vertices Min instead keeps every cycle negative (energy-game strategy).
MemorylessStrategy extract_min_tp(const Arena& arena, const ValueVector& values);
// Optimal memoryless Max strategy for total payoff: tight edges on finite
// vertices, arranged so that Min cannot revisit positive-valued vertices along
// zero-weight cycles; an energy-game strategy on +inf vertices.
MemorylessStrategy extract_max_tp(const Arena& arena, const ValueVector& values);

struct PlayOutcome {
  Lasso lasso;                // for MCR plays that reach the target: prefix ends at it, cycle is empty
  bool reached_target = false;
  ExtValue payoff;
};

// Simulates the unique outcome from `start`; lassos are detected on repeated
// (vertex, memory, memory) triples.
PlayOutcome play_out(const Arena& arena, const MooreStrategy& max, const MooreStrategy& min, VertexId start,
                     Objective objective, std::uint64_t max_steps = 0);

inline constexpr std::size_t kMaxProductStates = 5'000'000;

// MCR value of every vertex (at its initial memory) when `fixed` is played and
// the opponent answers optimally in the product arena.
ValueVector best_response(const Arena& arena, const MooreStrategy& fixed, std::size_t max_states = kMaxProductStates);

nlohmann::ordered_json strategy_json(const Arena& arena, const MemorylessStrategy& s);
nlohmann::ordered_json switching_json(const Arena& arena, const SwitchingStrategy& s);
nlohmann::ordered_json counter_json(const CounterStrategy& s);

}  // namespace qg
