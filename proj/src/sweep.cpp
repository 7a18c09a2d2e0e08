#include "qg/sweep.hpp"

#include <algorithm>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qg {
namespace {

inline ExtValue update_vertex(const SweepSpec& spec, VertexId v, std::span<const ExtValue> prev) {
  const Arena& a = *spec.arena;
  auto succ = a.successors(v);
  auto w = a.weights(v);
  const bool is_max = a.owner(v) == Player::Max;
  ExtValue best = is_max ? ExtValue::neg_inf() : ExtValue::pos_inf();
  for (std::size_t i = 0; i < succ.size(); ++i) {
    auto s = static_cast<std::size_t>(succ[i]);
    ExtValue x = prev[s];
    if (spec.cap) x = std::min(x, spec.cap[s]);
    ExtValue c = ExtValue(w[i]) + x;
    best = is_max ? std::max(best, c) : std::min(best, c);
  }
  if (best.is_finite() && best.raw() < -spec.cutoff) best = ExtValue::neg_inf();
  return best;
}

}  // namespace

bool sweep_serial(const SweepSpec& spec, std::span<const ExtValue> prev, std::span<ExtValue> next) {
  bool changed = false;
  for (VertexId v : spec.active) {
    auto vi = static_cast<std::size_t>(v);
    ExtValue x = update_vertex(spec, v, prev);
    changed = changed || x != prev[vi];
    next[vi] = x;
  }
  return changed;
}

bool sweep_parallel(const SweepSpec& spec, std::span<const ExtValue> prev, std::span<ExtValue> next) {
  bool changed = false;
  std::exception_ptr error;
  const auto count = static_cast<std::int64_t>(spec.active.size());
#pragma omp parallel for schedule(static) reduction(|| : changed)
  for (std::int64_t i = 0; i < count; ++i) {
    VertexId v = spec.active[static_cast<std::size_t>(i)];
    auto vi = static_cast<std::size_t>(v);
    try {
      ExtValue x = update_vertex(spec, v, prev);
      changed = changed || x != prev[vi];
      next[vi] = x;
    } catch (...) {
#pragma omp critical(qg_sweep_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return changed;
}

bool sweep(const SweepSpec& spec, std::span<const ExtValue> prev, std::span<ExtValue> next, Exec exec) {
  bool parallel = exec == Exec::Parallel;
  if (exec == Exec::Auto) {
#ifdef _OPENMP
    parallel = spec.active.size() >= kParallelGrain && omp_get_max_threads() > 1;
#endif
  }
  return parallel ? sweep_parallel(spec, prev, next) : sweep_serial(spec, prev, next);
}

}  // namespace qg
