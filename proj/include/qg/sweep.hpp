#pragma once

#include <cstdint>
#include <span>

#include "qg/arena.hpp"
#include "qg/stats.hpp"

namespace qg {

// One Jacobi sweep over `active`:
//   next[v] = opt_{v' in E(v)} w(v,v') + min(prev[v'], cap[v'])     (cap optional)
// with opt = max for Max vertices and min for Min vertices. Finite results
// below -cutoff become -inf. Entries outside `active` are left untouched.
// Returns true iff some active entry differs from prev.
struct SweepSpec {
  const Arena* arena = nullptr;
  std::span<const VertexId> active;
  const ExtValue* cap = nullptr;
  std::int64_t cutoff = 0;
};

bool sweep_serial(const SweepSpec& spec, std::span<const ExtValue> prev, std::span<ExtValue> next);
bool sweep_parallel(const SweepSpec& spec, std::span<const ExtValue> prev, std::span<ExtValue> next);
bool sweep(const SweepSpec& spec, std::span<const ExtValue> prev, std::span<ExtValue> next, Exec exec);

// Minimum number of active vertices for Exec::Auto to use the parallel kernel.
inline constexpr std::size_t kParallelGrain = 4096;

}  // namespace qg
