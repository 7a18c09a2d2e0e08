#pragma once

#include <cstdint>
#include <vector>

#include "qg/arena.hpp"
#include "qg/mcr.hpp"
#include "qg/stats.hpp"
#include "qg/tp.hpp"

namespace qg {

// Components numbered in reverse topological order: dec(v) >= dec(v') for every
// edge. Among components whose successors are all numbered, those holding a
// target come first, then the one with the smallest member index.
struct SccDecomposition {
  std::vector<std::uint32_t> dec;
  std::vector<std::vector<VertexId>> components;  // members sorted by index
};

SccDecomposition scc_decompose(const Arena& arena);

// Candidate values of one vertex, gathered from the simple paths that start at
// it and stay inside its component.
struct PathCandidates {
  std::vector<ExtValue> exits;        // TP(path) + w(u, w) + finalized(w) for w in a lower component
  std::vector<std::int64_t> sums;     // TP of every simple in-component path, the empty one included
  std::vector<std::pair<std::int64_t, VertexId>> steps;  // TP(path) + w(u, x) for in-component edges (u, x)
};

// Candidates for every member of component q (in member order), or an empty
// vector when more than `cap` candidates would be produced for some vertex.
std::vector<PathCandidates> simple_path_oracle(const Arena& arena, const SccDecomposition& dec, std::uint32_t q,
                                               const ValueVector& finalized, std::size_t cap);

// Candidate set S_v: exits plus both infinities, sorted.
std::vector<ExtValue> exit_candidate_set(const PathCandidates& c);

enum class OracleKind : std::uint8_t { NoClamp, SimplePaths };

struct AccelOptions {
  OracleKind oracle = OracleKind::SimplePaths;
  std::size_t path_cap = 4096;
  Exec exec = Exec::Auto;
};

// Component-by-component value iteration; values equal solve_mcr.
McrResult solve_mcr_accelerated(const Arena& arena, const AccelOptions& opts = {});
// Component-by-component nested iteration; values equal solve_tp.
TpResult solve_tp_accelerated(const Arena& arena, const AccelOptions& opts = {});

}  // namespace qg
