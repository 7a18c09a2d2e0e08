#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qg/arena.hpp"

namespace qg {

// Memoryless strategy: one successor per owned vertex (kNoVertex elsewhere).
struct MemorylessStrategy {
  Player player = Player::Max;
  std::vector<VertexId> choice;

  VertexId operator()(VertexId v) const { return choice[static_cast<std::size_t>(v)]; }
  bool operator==(const MemorylessStrategy&) const = default;
};

// Memory state of a Moore machine. Machines interpret the two fields freely.
struct Memory {
  std::int64_t a = 0;
  std::int64_t b = 0;
  bool operator==(const Memory&) const = default;
};

struct MemoryHash {
  std::size_t operator()(const Memory& m) const noexcept {
    return std::hash<std::int64_t>()(m.a) * 1000003u ^ std::hash<std::int64_t>()(m.b);
  }
};

// Deterministic Moore machine <M, m0, up, dec>. The memory after reading the
// first vertex v0 is initial(v0); after reading v it becomes update(m, v).
class MooreStrategy {
 public:
  virtual ~MooreStrategy() = default;
  virtual Player player() const = 0;
  virtual Memory initial(VertexId v0) const = 0;
  virtual Memory update(const Memory& m, VertexId v) const = 0;
  virtual VertexId decide(const Memory& m, VertexId v) const = 0;
  // |M| when known.
  virtual std::optional<std::uint64_t> memory_size() const { return std::nullopt; }
};

class MemorylessMachine final : public MooreStrategy {
 public:
  explicit MemorylessMachine(MemorylessStrategy s) : s_(std::move(s)) {}
  Player player() const override { return s_.player; }
  Memory initial(VertexId) const override { return {}; }
  Memory update(const Memory& m, VertexId) const override { return m; }
  VertexId decide(const Memory&, VertexId v) const override { return s_(v); }
  std::optional<std::uint64_t> memory_size() const override { return 1; }
  const MemorylessStrategy& strategy() const { return s_; }

 private:
  MemorylessStrategy s_;
};

}  // namespace qg
