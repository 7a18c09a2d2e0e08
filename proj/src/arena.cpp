#include "qg/arena.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace qg {

const char* to_string(Player p) { return p == Player::Max ? "max" : "min"; }
const char* to_string(Objective o) { return o == Objective::MCR ? "mcr" : "tp"; }

std::size_t vertex_cap() {
  if (const char* env = std::getenv("QG_MAX_VERTICES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultVertexCap;
}

bool is_valid_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

std::optional<VertexId> Arena::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Weight> Arena::edge_weight(VertexId src, VertexId dst) const {
  auto succ = successors(src);
  auto it = std::lower_bound(succ.begin(), succ.end(), dst);
  if (it == succ.end() || *it != dst) return std::nullopt;
  return weights(src)[static_cast<std::size_t>(it - succ.begin())];
}

std::vector<VertexId> Arena::targets() const {
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < target_.size(); ++v)
    if (target_[v]) out.push_back(static_cast<VertexId>(v));
  return out;
}

std::vector<Edge> Arena::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (VertexId v = 0; v < static_cast<VertexId>(num_vertices()); ++v) {
    auto succ = successors(v);
    auto w = weights(v);
    for (std::size_t i = 0; i < succ.size(); ++i) out.push_back({v, succ[i], w[i]});
  }
  return out;
}

Arena Arena::with_objective(Objective objective) const {
  ArenaBuilder b(objective);
  for (VertexId v = 0; v < static_cast<VertexId>(num_vertices()); ++v) b.add_vertex(name(v), owner(v), is_target(v));
  for (const Edge& e : edges()) b.add_edge(e.src, e.dst, e.weight);
  return b.build();
}

VertexId ArenaBuilder::add_vertex(std::string name, Player owner, bool target) {
  if (!is_valid_name(name)) throw Error(ErrorCode::BadName, "invalid vertex name '" + name + "'");
  if (index_.count(name)) throw Error(ErrorCode::DuplicateVertex, "vertex '" + name + "' declared twice");
  if (owner_.size() + 1 > vertex_cap()) {
    throw Error(ErrorCode::CapExceeded, "vertex count exceeds cap " + std::to_string(vertex_cap()));
  }
  auto id = static_cast<VertexId>(owner_.size());
  index_.emplace(name, id);
  names_.push_back(std::move(name));
  owner_.push_back(owner);
  target_.push_back(target ? 1 : 0);
  return id;
}

std::string ArenaBuilder::fresh_name(std::string_view base) const {
  std::string name(base);
  for (int i = 1; index_.count(name); ++i) name = std::string(base) + "_" + std::to_string(i);
  return name;
}

void ArenaBuilder::add_edge(VertexId src, VertexId dst, Weight weight) {
  auto n = static_cast<VertexId>(owner_.size());
  if (src < 0 || src >= n || dst < 0 || dst >= n) throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
  edges_.push_back({src, dst, weight});
}

void ArenaBuilder::set_target(VertexId v, bool target) { target_.at(static_cast<std::size_t>(v)) = target ? 1 : 0; }

std::optional<VertexId> ArenaBuilder::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Arena ArenaBuilder::build() const {
  const std::size_t n = owner_.size();
  if (n > vertex_cap()) throw Error(ErrorCode::CapExceeded, "vertex count exceeds cap " + std::to_string(vertex_cap()));
  if (objective_ == Objective::MCR && std::none_of(target_.begin(), target_.end(), [](auto t) { return t != 0; })) {
    throw Error(ErrorCode::EmptyTargetForMCR, "an MCR arena needs at least one target");
  }
  std::vector<Edge> sorted = edges_;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Edge& a, const Edge& b) { return a.src != b.src ? a.src < b.src : a.dst < b.dst; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Edge& e = sorted[i];
    if (e.weight > kMaxAbsWeight || e.weight < -kMaxAbsWeight) {
      throw Error(ErrorCode::WeightOverflow, "edge " + names_[static_cast<std::size_t>(e.src)] + " -> " +
                                                 names_[static_cast<std::size_t>(e.dst)] + " has weight " +
                                                 std::to_string(e.weight));
    }
    if (i > 0 && sorted[i - 1].src == e.src && sorted[i - 1].dst == e.dst) {
      throw Error(ErrorCode::DuplicateEdge, "duplicate edge " + names_[static_cast<std::size_t>(e.src)] + " -> " +
                                                names_[static_cast<std::size_t>(e.dst)]);
    }
  }

  Arena a;
  a.objective_ = objective_;
  a.names_ = names_;
  a.owner_ = owner_;
  a.target_ = target_;
  a.index_ = index_;
  a.offset_.assign(n + 1, 0);
  a.dst_.reserve(sorted.size());
  a.weight_.reserve(sorted.size());
  std::vector<std::size_t> indeg(n, 0);
  for (const Edge& e : sorted) {
    ++a.offset_[static_cast<std::size_t>(e.src) + 1];
    ++indeg[static_cast<std::size_t>(e.dst)];
    a.dst_.push_back(e.dst);
    a.weight_.push_back(e.weight);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (a.offset_[v + 1] == 0) throw Error(ErrorCode::DeadlockVertex, "vertex " + names_[v] + " has no successor");
    a.offset_[v + 1] += a.offset_[v];
  }
  a.pred_offset_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) a.pred_offset_[v + 1] = a.pred_offset_[v] + indeg[v];
  a.pred_.resize(sorted.size());
  std::vector<std::size_t> fill(a.pred_offset_.begin(), a.pred_offset_.end() - 1);
  for (const Edge& e : sorted) a.pred_[fill[static_cast<std::size_t>(e.dst)]++] = e.src;
  return a;
}

void validate(const Arena& arena) {
  const auto n = static_cast<VertexId>(arena.num_vertices());
  if (arena.num_vertices() > vertex_cap()) throw Error(ErrorCode::CapExceeded, "vertex count exceeds cap");
  for (VertexId v = 0; v < n; ++v) {
    if (!is_valid_name(arena.name(v))) throw Error(ErrorCode::BadName, "invalid vertex name '" + arena.name(v) + "'");
  }
  if (arena.objective() == Objective::MCR && arena.targets().empty()) {
    throw Error(ErrorCode::EmptyTargetForMCR, "an MCR arena needs at least one target");
  }
  for (VertexId v = 0; v < n; ++v) {
    auto succ = arena.successors(v);
    auto w = arena.weights(v);
    if (succ.empty()) throw Error(ErrorCode::DeadlockVertex, "vertex " + arena.name(v) + " has no successor");
    for (std::size_t i = 0; i < succ.size(); ++i) {
      if (w[i] > kMaxAbsWeight || w[i] < -kMaxAbsWeight) throw Error(ErrorCode::WeightOverflow, "edge weight too large");
      if (i > 0 && succ[i - 1] == succ[i]) throw Error(ErrorCode::DuplicateEdge, "duplicate edge");
    }
  }
}

Weight max_abs_weight(const Arena& arena) {
  Weight w = 0;
  for (const Edge& e : arena.edges()) w = std::max(w, e.weight < 0 ? -e.weight : e.weight);
  return w;
}

bool is_normalized(const Arena& arena) {
  auto targets = arena.targets();
  if (targets.size() != 1) return false;
  auto succ = arena.successors(targets[0]);
  return succ.size() == 1 && succ[0] == targets[0] && arena.weights(targets[0])[0] == 0;
}

VertexId target_of(const Arena& arena) {
  if (!is_normalized(arena)) throw Error(ErrorCode::InvalidArgument, "arena is not normalized");
  return arena.targets()[0];
}

Arena normalize_target(const Arena& arena) {
  if (arena.objective() != Objective::MCR) throw Error(ErrorCode::InvalidArgument, "normalize_target needs an MCR arena");
  validate(arena);
  if (is_normalized(arena)) return arena;
  ArenaBuilder b(Objective::MCR);
  const auto n = static_cast<VertexId>(arena.num_vertices());
  for (VertexId v = 0; v < n; ++v) b.add_vertex(arena.name(v), arena.owner(v), false);
  VertexId t = b.add_vertex(b.fresh_name("t"), Player::Max, true);
  for (VertexId v = 0; v < n; ++v) {
    if (arena.is_target(v)) {
      b.add_edge(v, t, 0);
      continue;
    }
    auto succ = arena.successors(v);
    auto w = arena.weights(v);
    for (std::size_t i = 0; i < succ.size(); ++i) b.add_edge(v, succ[i], w[i]);
  }
  b.add_edge(t, t, 0);
  return b.build();
}

}  // namespace qg
