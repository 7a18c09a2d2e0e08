#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qg/arena.hpp"
#include "qg/error.hpp"
#include "qg/gamefile.hpp"

namespace qg::testing {

inline const ExtValue kPosInf = ExtValue::pos_inf();
inline const ExtValue kNegInf = ExtValue::neg_inf();

// Code of the qg::Error thrown by f, or nullopt if it returns normally.
template <class F>
std::optional<ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline Arena game(const std::string& text) { return parse(text); }

inline ValueVector head(const ValueVector& v, std::size_t n) { return ValueVector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n)); }

inline VertexId id(const Arena& a, const std::string& name) { return *a.find(name); }

// Same arena with every weight multiplied by c.
inline Arena scaled(const Arena& a, Weight c) {
  ArenaBuilder b(a.objective());
  for (VertexId v = 0; v < static_cast<VertexId>(a.num_vertices()); ++v) b.add_vertex(a.name(v), a.owner(v), a.is_target(v));
  for (const Edge& e : a.edges()) b.add_edge(e.src, e.dst, e.weight * c);
  return b.build();
}

}  // namespace qg::testing
