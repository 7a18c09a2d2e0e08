#pragma once

#include <cstdint>
#include <vector>

#include "qg/arena.hpp"
#include "qg/mcr.hpp"
#include "qg/stats.hpp"

namespace qg {

struct TpResult {
  ValueVector values;
  SolveStats stats;
};

// |V| * (2(|V|-1)W + 1).
std::uint64_t k_bound(const Arena& arena);

// Nested value iteration for total-payoff games. Targets are ignored.
TpResult solve_tp(const Arena& arena, const SolveOptions& opts = {});

// MCR game whose value on original vertices is one outer step applied to Y.
// Layout: original vertices 0..n-1, interior vertex (in,v) at n+v, target at 2n.
// Interior vertices belong to Min.
Arena build_game_Y(const Arena& arena, const ValueVector& Y);
inline VertexId interior_of(const Arena& original, VertexId v) {
  return static_cast<VertexId>(original.num_vertices()) + v;
}

struct Unfolding {
  Arena arena;
  std::vector<VertexId> top;  // v -> (v, n)
};

// The n-copy MCR unfolding. Copy j occupies indices [(j-1)*3|V|, j*3|V|):
// copies, then interior (Min), then exterior (Max) vertices; the target is last.
Unfolding build_unfolding(const Arena& arena, std::size_t n);

enum class TpClass : std::int8_t { NegInf = -1, Finite = 0, PosInf = 1 };
std::vector<TpClass> classify_tp_infinities(const Arena& arena);

}  // namespace qg
