#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qg/ext_value.hpp"

namespace qg {

enum class Player : std::uint8_t { Max, Min };
enum class Objective : std::uint8_t { MCR, TP };

using VertexId = std::int32_t;
inline constexpr VertexId kNoVertex = -1;

inline constexpr Weight kMaxAbsWeight = 1'000'000'000;
inline constexpr std::size_t kDefaultVertexCap = 1'000'000;

struct Edge {
  VertexId src = 0;
  VertexId dst = 0;
  Weight weight = 0;
  bool operator==(const Edge&) const = default;
};

inline Player opponent(Player p) { return p == Player::Max ? Player::Min : Player::Max; }
const char* to_string(Player p);
const char* to_string(Objective o);

// Vertex cap, overridable through the QG_MAX_VERTICES environment variable.
std::size_t vertex_cap();

bool is_valid_name(std::string_view name);

using ValueVector = std::vector<ExtValue>;

// Immutable weighted game graph. Only ArenaBuilder creates non-empty arenas,
// so every instance satisfies the validation rules.
class Arena {
 public:
  Arena() = default;

  std::size_t num_vertices() const { return owner_.size(); }
  std::size_t num_edges() const { return dst_.size(); }
  Objective objective() const { return objective_; }

  Player owner(VertexId v) const { return owner_[static_cast<std::size_t>(v)]; }
  bool is_target(VertexId v) const { return target_[static_cast<std::size_t>(v)] != 0; }
  const std::string& name(VertexId v) const { return names_[static_cast<std::size_t>(v)]; }
  std::optional<VertexId> find(std::string_view name) const;

  std::span<const VertexId> successors(VertexId v) const {
    auto i = static_cast<std::size_t>(v);
    return {dst_.data() + offset_[i], offset_[i + 1] - offset_[i]};
  }
  std::span<const Weight> weights(VertexId v) const {
    auto i = static_cast<std::size_t>(v);
    return {weight_.data() + offset_[i], offset_[i + 1] - offset_[i]};
  }
  std::span<const VertexId> predecessors(VertexId v) const {
    auto i = static_cast<std::size_t>(v);
    return {pred_.data() + pred_offset_[i], pred_offset_[i + 1] - pred_offset_[i]};
  }
  std::size_t out_degree(VertexId v) const { return successors(v).size(); }
  // Weight of edge (src, dst); nullopt if absent.
  std::optional<Weight> edge_weight(VertexId src, VertexId dst) const;

  std::vector<VertexId> targets() const;
  std::vector<Edge> edges() const;  // sorted by (src, dst)

  Arena with_objective(Objective objective) const;

 private:
  friend class ArenaBuilder;

  Objective objective_ = Objective::TP;
  std::vector<std::string> names_;
  std::vector<Player> owner_;
  std::vector<std::uint8_t> target_;
  std::vector<std::size_t> offset_{0};
  std::vector<VertexId> dst_;
  std::vector<Weight> weight_;
  std::vector<std::size_t> pred_offset_{0};
  std::vector<VertexId> pred_;
  std::unordered_map<std::string, VertexId> index_;
};

class ArenaBuilder {
 public:
  explicit ArenaBuilder(Objective objective) : objective_(objective) {}

  // Throws BadName, DuplicateVertex or CapExceeded.
  VertexId add_vertex(std::string name, Player owner, bool target = false);
  // Picks a name derived from `base` that is not yet taken.
  std::string fresh_name(std::string_view base) const;
  void add_edge(VertexId src, VertexId dst, Weight weight);
  void set_target(VertexId v, bool target = true);

  std::size_t num_vertices() const { return owner_.size(); }
  std::optional<VertexId> find(std::string_view name) const;

  // Validates and freezes the arena.
  Arena build() const;

 private:
  Objective objective_;
  std::vector<std::string> names_;
  std::vector<Player> owner_;
  std::vector<std::uint8_t> target_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, VertexId> index_;
};

// Re-checks every arena invariant; throws the first violation found.
void validate(const Arena& arena);

Weight max_abs_weight(const Arena& arena);

// Single fresh Max target `t` with a 0 self-loop; each former target keeps its
// owner but its outgoing edges are replaced by one 0-weight edge to `t`.
// Original vertices keep their indices; `t` is appended last.
Arena normalize_target(const Arena& arena);
bool is_normalized(const Arena& arena);
// The unique target of a normalized arena.
VertexId target_of(const Arena& arena);

}  // namespace qg
