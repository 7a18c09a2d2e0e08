#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qg/arena.hpp"
#include "qg/stats.hpp"

namespace qg {

struct McrResult {
  ValueVector values;
  SolveStats stats;
  std::optional<IterationTrace> trace;
};

// -inf cutoff threshold (|V|-1)*W.
std::int64_t cutoff_threshold(const Arena& arena);
// Sweep bound (2|V|-1)*W*|V| + 2|V|.
std::uint64_t mcr_sweep_bound(const Arena& arena);

// Value iteration for MCR games from X(t) = 0, X(v) = +inf elsewhere, with the
// -inf cutoff applied inside each sweep. Requires a normalized target.
McrResult solve_mcr(const Arena& arena, const SolveOptions& opts = {});

// Applies one operator step to `x` (no cutoff); t keeps value 0.
ValueVector mcr_operator(const Arena& arena, const ValueVector& x);

enum class Sign : std::int8_t { Negative = -1, Zero = 0, Positive = 1 };
const char* to_string(Sign s);

// Sign of the mean-payoff value of every vertex (targets ignored).
std::vector<Sign> mp_sign(const Arena& arena);

// Inserts a 0-weight relay vertex owned by the other player on each edge that
// joins two vertices of the same owner. Original vertices keep their indices.
Arena make_bipartite(const Arena& arena);

// Mean-payoff to MCR reduction: bipartite arena plus a fresh target reachable
// with weight 0 from every Min vertex. Original vertices keep their indices.
Arena mp_to_mcr(const Arena& arena);

// Sub-arena induced by `keep` (edges leaving it are dropped). `index_map`
// receives the old index of each new vertex.
Arena induced_subarena(const Arena& arena, const std::vector<std::uint8_t>& keep, std::vector<VertexId>* index_map);

// Vertices with MCR value -inf, classified by mean-payoff sign on the
// attractor of the target (normalized arena).
std::vector<VertexId> classify_minus_infinity(const Arena& arena);

}  // namespace qg
