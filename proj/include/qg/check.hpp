#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "qg/accel.hpp"
#include "qg/arena.hpp"
#include "qg/gamefile.hpp"

namespace qg {

// Compares the solvers (plain and both accelerated oracles) with the brute-force
// oracle of the arena's objective. Returns a description of the first mismatch.
std::optional<std::string> cross_validate(const Arena& arena);

// Greedy shrinking: removes vertices, edges and targets and moves weights
// toward 0 while `fails` keeps holding. The result still fails and has at most
// as many vertices as the input.
Arena minimize_counterexample(const Arena& arena, const std::function<bool(const Arena&)>& fails);

// FNV-1a over "name=value;" in vertex order, as 16 hex digits.
std::string values_hash(const Arena& arena, const ValueVector& values);

enum class AccelMode : std::uint8_t { None, Scc, SccPaths };
AccelMode parse_accel(std::string_view name);
const char* to_string(AccelMode mode);

struct BenchRow {
  std::string family;
  Weight W = 0;
  std::size_t n = 0;
  std::string accel;
  std::uint64_t k_e = 0;
  std::uint64_t k_i = 0;
  double wall_ms = 0;
  std::string values_hash;
};

inline constexpr const char* kBenchHeader = "family,W,n,accel,k_e,k_i,wall_ms,values_hash";

// Generates and solves one (family, W, n) instance under `mode`.
BenchRow run_bench_cell(const FamilySpec& spec, AccelMode mode, std::size_t path_cap = 4096, Exec exec = Exec::Auto);
std::string to_csv(const BenchRow& row);

// Solves an arena per its objective (MCR arenas are normalized first) and
// returns values for the original vertices.
struct Solved {
  ValueVector values;
  SolveStats stats;
  std::optional<IterationTrace> trace;
};
Solved solve_arena(const Arena& arena, AccelMode mode, const AccelOptions& accel = {}, bool record_trace = false);

}  // namespace qg
