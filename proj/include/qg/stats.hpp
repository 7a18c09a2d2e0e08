#pragma once

#include <cstdint>
#include <vector>

#include "qg/arena.hpp"

namespace qg {

// Loop-body execution counts. Every execution counts, including the final
// pass that observes no change.
struct SolveStats {
  std::uint64_t outer_iterations = 0;
  std::uint64_t inner_iterations = 0;
  std::uint64_t sweeps = 0;
  double wall_ms = 0.0;
};

enum class Exec : std::uint8_t { Serial, Parallel, Auto };

struct SolveOptions {
  bool record_trace = false;
  Exec exec = Exec::Auto;
};

// x_0, x_1, ... as produced by successive sweeps.
using IterationTrace = std::vector<ValueVector>;

}  // namespace qg
