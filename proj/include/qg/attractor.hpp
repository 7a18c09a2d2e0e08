#pragma once

#include <cstdint>
#include <vector>

#include "qg/arena.hpp"

namespace qg {

struct AttractorResult {
  std::vector<std::uint8_t> attracted;  // membership flag per vertex
  std::vector<std::int64_t> rank;       // step at which a vertex entered; -1 outside
  std::vector<VertexId> min_reach;      // Min vertices inside the attractor, else kNoVertex
  std::vector<VertexId> max_avoid;      // Max vertices outside the attractor, else kNoVertex

  bool contains(VertexId v) const { return attracted[static_cast<std::size_t>(v)] != 0; }
  std::vector<VertexId> members() const;
};

// Min-attractor of `from` computed by backward counting in O(|V| + |E|).
AttractorResult compute_attractor(const Arena& arena, const std::vector<VertexId>& from);

// Vertices of MCR value +inf: those outside the attractor of the targets.
std::vector<VertexId> classify_plus_infinity(const Arena& arena);

}  // namespace qg
