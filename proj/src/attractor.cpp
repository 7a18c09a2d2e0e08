#include "qg/attractor.hpp"

namespace qg {

std::vector<VertexId> AttractorResult::members() const {
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < attracted.size(); ++v)
    if (attracted[v]) out.push_back(static_cast<VertexId>(v));
  return out;
}

AttractorResult compute_attractor(const Arena& arena, const std::vector<VertexId>& from) {
  const std::size_t n = arena.num_vertices();
  AttractorResult r;
  r.attracted.assign(n, 0);
  r.rank.assign(n, -1);
  r.min_reach.assign(n, kNoVertex);
  r.max_avoid.assign(n, kNoVertex);

  std::vector<std::size_t> remaining(n);
  for (std::size_t v = 0; v < n; ++v) remaining[v] = arena.out_degree(static_cast<VertexId>(v));

  // Breadth-first by rank so that each vertex enters at the first round it qualifies.
  std::vector<VertexId> frontier;
  for (VertexId v : from) {
    if (!r.attracted[static_cast<std::size_t>(v)]) {
      r.attracted[static_cast<std::size_t>(v)] = 1;
      r.rank[static_cast<std::size_t>(v)] = 0;
      frontier.push_back(v);
    }
  }
  std::int64_t round = 0;
  while (!frontier.empty()) {
    ++round;
    std::vector<VertexId> next;
    for (VertexId u : frontier) {
      for (VertexId p : arena.predecessors(u)) {
        auto pi = static_cast<std::size_t>(p);
        if (r.attracted[pi]) continue;
        if (arena.owner(p) == Player::Min || --remaining[pi] == 0) {
          r.attracted[pi] = 1;
          r.rank[pi] = round;
          next.push_back(p);
        }
      }
    }
    frontier = std::move(next);
  }

  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    auto vi = static_cast<std::size_t>(v);
    if (r.attracted[vi] && arena.owner(v) == Player::Min && r.rank[vi] > 0) {
      VertexId best = kNoVertex;
      for (VertexId s : arena.successors(v)) {
        auto si = static_cast<std::size_t>(s);
        if (!r.attracted[si]) continue;
        if (best == kNoVertex || r.rank[si] < r.rank[static_cast<std::size_t>(best)]) best = s;
      }
      r.min_reach[vi] = best;
    } else if (!r.attracted[vi] && arena.owner(v) == Player::Max) {
      for (VertexId s : arena.successors(v)) {
        if (!r.attracted[static_cast<std::size_t>(s)]) {
          r.max_avoid[vi] = s;
          break;
        }
      }
    }
  }
  return r;
}

std::vector<VertexId> classify_plus_infinity(const Arena& arena) {
  auto attr = compute_attractor(arena, arena.targets());
  std::vector<VertexId> out;
  for (VertexId v = 0; v < static_cast<VertexId>(arena.num_vertices()); ++v)
    if (!attr.contains(v)) out.push_back(v);
  return out;
}

}  // namespace qg
