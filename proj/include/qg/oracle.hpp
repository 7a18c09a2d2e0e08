#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qg/arena.hpp"
#include "qg/strategy.hpp"

namespace qg {

// Ultimately periodic play prefix . cycle^omega.
struct Lasso {
  std::vector<VertexId> prefix;
  std::vector<VertexId> cycle;
};

// Exact rational with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  int sign() const { return (num > 0) - (num < 0); }
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
    return static_cast<__int128>(x.num) * y.den <=> static_cast<__int128>(y.num) * x.den;
  }
  friend bool operator==(const Rational& x, const Rational& y) { return (x <=> y) == 0; }
};

enum class PayoffKind : std::uint8_t { TP, MCR };

std::int64_t tp_of_prefix(const Arena& arena, std::span<const VertexId> play);
// Lasso as a flat vertex sequence: prefix, then one period of the cycle.
std::vector<VertexId> lasso_vertices(const Lasso& lasso);
ExtValue payoff_of_lasso(const Arena& arena, const Lasso& lasso, PayoffKind kind);
Rational mean_payoff_of_lasso(const Arena& arena, const Lasso& lasso);
// Lasso followed from `start` under a memoryless profile.
Lasso memoryless_lasso(const Arena& arena, const MemorylessStrategy& max, const MemorylessStrategy& min, VertexId start);

inline constexpr std::uint64_t kMaxEnumeratedStrategies = 10'000'000;

// Odometer over all memoryless strategies of `player`, lexicographic in the
// successor order of owned vertices (lowest index most significant).
class MemorylessEnumerator {
 public:
  MemorylessEnumerator(const Arena& arena, Player player);
  const MemorylessStrategy& current() const { return current_; }
  bool next();
  std::uint64_t count() const { return count_; }

 private:
  const Arena* arena_;
  std::vector<VertexId> owned_;
  std::vector<std::size_t> digit_;
  MemorylessStrategy current_;
  std::uint64_t count_ = 1;
};

std::uint64_t count_memoryless(const Arena& arena, Player player);

// Brute-force value vectors over memoryless strategies.
ValueVector mcr_oracle(const Arena& arena);
ValueVector tp_oracle(const Arena& arena);
std::vector<Rational> mp_oracle(const Arena& arena);
// Optimal value of the other player when `fixed` is played (one-player TP).
ValueVector tp_oracle_fixed(const Arena& arena, const MemorylessStrategy& fixed);
// Min's one-player MCR optimum against a fixed Max strategy, by Bellman-Ford.
ValueVector mcr_min_response(const Arena& arena, const MemorylessStrategy& max);

struct RandomArenaSpec {
  Objective objective = Objective::TP;
  std::size_t min_vertices = 1;
  std::size_t max_vertices = 5;
  Weight max_weight = 3;
  std::size_t max_out_degree = 3;
};

Arena random_arena(const RandomArenaSpec& spec, std::mt19937_64& rng);

}  // namespace qg
