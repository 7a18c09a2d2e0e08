#include "qg/gamefile.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace qg {
namespace {

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

[[noreturn]] void syntax(std::size_t line, std::size_t column, const std::string& expected) {
  throw ParseError(ErrorCode::SyntaxError, line, column, "expected " + expected);
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty() || s.front() == '+') return std::nullopt;
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct PendingEdge {
  VertexId src;
  VertexId dst;
  Weight weight;
};

}  // namespace

Arena parse(std::string_view text, std::vector<std::string>* warnings) {
  std::optional<ArenaBuilder> builder;
  std::vector<PendingEdge> edges;
  std::map<std::pair<VertexId, VertexId>, std::size_t> seen;
  std::vector<Player> owners;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    pos = end + 1;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string_view head = tokens[0].text;
    const std::size_t eol = line.size() + 1;

    if (!builder) {
      if (head != "objective") syntax(line_no, tokens[0].column, "'objective'");
      if (tokens.size() < 2) syntax(line_no, eol, "'mcr' or 'tp'");
      Objective obj;
      if (tokens[1].text == "mcr") {
        obj = Objective::MCR;
      } else if (tokens[1].text == "tp") {
        obj = Objective::TP;
      } else {
        syntax(line_no, tokens[1].column, "'mcr' or 'tp'");
      }
      if (tokens.size() > 2) syntax(line_no, tokens[2].column, "end of line");
      builder.emplace(obj);
      continue;
    }

    if (head == "vertex") {
      if (tokens.size() < 2) syntax(line_no, eol, "vertex name");
      const Token& name = tokens[1];
      if (!is_valid_name(name.text)) syntax(line_no, name.column, "vertex name matching [A-Za-z0-9_]+");
      if (builder->find(name.text)) {
        throw ParseError(ErrorCode::DuplicateVertex, line_no, name.column,
                         "vertex '" + std::string(name.text) + "' declared twice");
      }
      if (tokens.size() < 3) syntax(line_no, eol, "'min' or 'max'");
      Player owner;
      if (tokens[2].text == "max") {
        owner = Player::Max;
      } else if (tokens[2].text == "min") {
        owner = Player::Min;
      } else {
        syntax(line_no, tokens[2].column, "'min' or 'max'");
      }
      bool target = false;
      if (tokens.size() > 3) {
        if (tokens[3].text != "target") syntax(line_no, tokens[3].column, "'target' or end of line");
        target = true;
      }
      if (tokens.size() > 4) syntax(line_no, tokens[4].column, "end of line");
      builder->add_vertex(std::string(name.text), owner, target);
      owners.push_back(owner);
    } else if (head == "edge") {
      VertexId ends[2];
      for (int k = 0; k < 2; ++k) {
        if (tokens.size() < static_cast<std::size_t>(k + 2)) syntax(line_no, eol, k == 0 ? "source vertex" : "target vertex");
        const Token& tok = tokens[static_cast<std::size_t>(k + 1)];
        auto id = builder->find(tok.text);
        if (!id) {
          throw ParseError(ErrorCode::UndeclaredVertex, line_no, tok.column,
                           "undeclared vertex '" + std::string(tok.text) + "'");
        }
        ends[k] = *id;
      }
      if (tokens.size() < 4) syntax(line_no, eol, "integer weight");
      auto w = parse_int(tokens[3].text);
      if (!w) syntax(line_no, tokens[3].column, "integer weight");
      if (*w > kMaxAbsWeight || *w < -kMaxAbsWeight) {
        throw ParseError(ErrorCode::WeightOverflow, line_no, tokens[3].column,
                         "weight " + std::string(tokens[3].text) + " exceeds 10^9 in absolute value");
      }
      if (tokens.size() > 4) syntax(line_no, tokens[4].column, "end of line");
      auto key = std::make_pair(ends[0], ends[1]);
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(key, edges.size());
        edges.push_back({ends[0], ends[1], *w});
      } else {
        PendingEdge& e = edges[it->second];
        Weight kept = owners[static_cast<std::size_t>(e.src)] == Player::Max ? std::max(e.weight, *w)
                                                                              : std::min(e.weight, *w);
        if (warnings) {
          warnings->push_back("line " + std::to_string(line_no) + ": parallel edge " + std::string(tokens[1].text) +
                              " -> " + std::string(tokens[2].text) + " merged, keeping weight " +
                              std::to_string(kept));
        }
        e.weight = kept;
      }
    } else if (head == "objective") {
      syntax(line_no, tokens[0].column, "'vertex' or 'edge' (objective already given)");
    } else {
      syntax(line_no, tokens[0].column, "'vertex' or 'edge'");
    }
  }
  if (!builder) syntax(line_no == 0 ? 1 : line_no, 0, "'objective' line");
  for (const PendingEdge& e : edges) builder->add_edge(e.src, e.dst, e.weight);
  return builder->build();
}

Arena parse_file(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), warnings);
}

std::string serialize(const Arena& arena) {
  std::string out = "objective ";
  out += to_string(arena.objective());
  out += '\n';
  const auto n = static_cast<VertexId>(arena.num_vertices());
  for (VertexId v = 0; v < n; ++v) {
    out += "vertex " + arena.name(v) + ' ' + to_string(arena.owner(v));
    if (arena.is_target(v)) out += " target";
    out += '\n';
  }
  for (const Edge& e : arena.edges()) {
    out += "edge " + arena.name(e.src) + ' ' + arena.name(e.dst) + ' ' + std::to_string(e.weight) + '\n';
  }
  return out;
}

std::string export_dot(const Arena& arena, const ValueVector* annot) {
  std::string out = "digraph game {\n";
  const auto n = static_cast<VertexId>(arena.num_vertices());
  for (VertexId v = 0; v < n; ++v) {
    out += "  " + arena.name(v) + " [shape=" + (arena.owner(v) == Player::Max ? "circle" : "box");
    if (arena.is_target(v)) out += ", peripheries=2";
    if (annot) out += ", label=\"" + arena.name(v) + "\\n" + (*annot)[static_cast<std::size_t>(v)].to_string() + "\"";
    out += "];\n";
  }
  for (const Edge& e : arena.edges()) {
    out += "  " + arena.name(e.src) + " -> " + arena.name(e.dst) + " [label=\"" + std::to_string(e.weight) + "\"];\n";
  }
  out += "}\n";
  return out;
}

Family parse_family(std::string_view name) {
  if (name == "fig1a") return Family::Fig1a;
  if (name == "fig2a") return Family::Fig2a;
  if (name == "fig2b") return Family::Fig2b;
  if (name == "lsp_fig5") return Family::LspFig5;
  if (name == "layered") return Family::Layered;
  throw Error(ErrorCode::InvalidArgument, "unknown family '" + std::string(name) + "'");
}

const char* to_string(Family family) {
  switch (family) {
    case Family::Fig1a: return "fig1a";
    case Family::Fig2a: return "fig2a";
    case Family::Fig2b: return "fig2b";
    case Family::LspFig5: return "lsp_fig5";
    case Family::Layered: return "layered";
  }
  return "?";
}

Arena generate(const FamilySpec& spec) {
  if (spec.W < 1 || spec.W > kMaxAbsWeight) throw Error(ErrorCode::InvalidArgument, "W must be in [1, 10^9]");
  if (spec.n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  const Weight W = spec.W;
  auto objective = [&](Objective dflt) { return spec.objective.value_or(dflt); };
  switch (spec.family) {
    case Family::Fig1a: {
      ArenaBuilder b(objective(Objective::TP));
      auto v1 = b.add_vertex("v1", Player::Max);
      auto v2 = b.add_vertex("v2", Player::Min);
      auto v3 = b.add_vertex("v3", Player::Min);
      auto v4 = b.add_vertex("v4", Player::Max);
      auto v5 = b.add_vertex("v5", Player::Min);
      b.add_edge(v1, v2, 2);
      b.add_edge(v2, v1, -1);
      b.add_edge(v2, v3, -1);
      b.add_edge(v3, v4, 2);
      b.add_edge(v4, v3, -2);
      b.add_edge(v4, v5, -1);
      b.add_edge(v5, v4, 1);
      if (objective(Objective::TP) == Objective::MCR) throw Error(ErrorCode::InvalidArgument, "fig1a has no target");
      return b.build();
    }
    case Family::Fig2a: {
      ArenaBuilder b(objective(Objective::MCR));
      auto v1 = b.add_vertex("v1", Player::Max);
      auto v2 = b.add_vertex("v2", Player::Min);
      auto v3 = b.add_vertex("v3", Player::Max, true);
      b.add_edge(v1, v2, -1);
      b.add_edge(v1, v3, -W);
      b.add_edge(v2, v1, 0);
      b.add_edge(v2, v3, 0);
      b.add_edge(v3, v3, 0);
      return b.build();
    }
    case Family::Fig2b: {
      ArenaBuilder b(objective(Objective::TP));
      auto v1 = b.add_vertex("v1", Player::Max);
      auto v2 = b.add_vertex("v2", Player::Min);
      auto v3 = b.add_vertex("v3", Player::Max, objective(Objective::TP) == Objective::MCR);
      b.add_edge(v1, v2, -W);
      b.add_edge(v2, v2, 1);
      b.add_edge(v2, v3, W);
      b.add_edge(v3, v3, 0);
      return b.build();
    }
    case Family::LspFig5: {
      ArenaBuilder b(objective(Objective::MCR));
      auto v1 = b.add_vertex("v1", Player::Max);
      auto v2 = b.add_vertex("v2", Player::Min);
      auto v3 = b.add_vertex("v3", Player::Min);
      auto v4 = b.add_vertex("v4", Player::Max);
      auto t = b.add_vertex("t", Player::Max, true);
      b.add_edge(v1, v2, -1);
      b.add_edge(v1, v3, 0);
      b.add_edge(v2, v1, 1);
      b.add_edge(v2, t, 3);
      b.add_edge(v3, v1, 1);
      b.add_edge(v3, t, 1);
      b.add_edge(v4, v4, -1);
      b.add_edge(v4, t, 0);
      b.add_edge(t, t, 0);
      return b.build();
    }
    case Family::Layered: {
      if (3 * spec.n + 1 > vertex_cap()) throw Error(ErrorCode::CapExceeded, "layered instance exceeds the vertex cap");
      ArenaBuilder b(objective(Objective::TP));
      const auto n = static_cast<VertexId>(spec.n);
      for (VertexId k = 0; k < n; ++k) {
        b.add_vertex("v" + std::to_string(3 * k + 1), Player::Max);
        b.add_vertex("v" + std::to_string(3 * k + 2), Player::Min);
        b.add_vertex("v" + std::to_string(3 * k + 3), Player::Min);
      }
      VertexId t = b.add_vertex("t", Player::Max, true);
      for (VertexId k = 0; k < n; ++k) {
        VertexId a = 3 * k, bk = a + 1, c = a + 2;
        VertexId next = k + 1 < n ? a + 3 : t;
        b.add_edge(a, bk, -1);
        b.add_edge(a, c, -W);
        b.add_edge(bk, a, 0);
        b.add_edge(bk, c, 0);
        b.add_edge(c, c, 1);
        b.add_edge(c, next, W);
      }
      b.add_edge(t, t, 0);
      return b.build();
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family");
}

nlohmann::ordered_json values_json(const Arena& arena, const ValueVector& values) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (VertexId v = 0; v < static_cast<VertexId>(arena.num_vertices()); ++v) {
    const ExtValue& x = values[static_cast<std::size_t>(v)];
    if (x.is_finite()) {
      out[arena.name(v)] = x.raw();
    } else {
      out[arena.name(v)] = x.to_string();
    }
  }
  return out;
}

std::string write_results_json(const Arena& arena, const ValueVector& values, const SolveStats& stats,
                               const std::optional<nlohmann::ordered_json>& strategies) {
  nlohmann::ordered_json out;
  out["values"] = values_json(arena, values);
  out["stats"] = {{"outer_iterations", stats.outer_iterations},
                  {"inner_iterations", stats.inner_iterations},
                  {"sweeps", stats.sweeps},
                  {"wall_ms", static_cast<std::int64_t>(std::llround(stats.wall_ms))}};
  if (strategies) out["strategies"] = *strategies;
  return out.dump(2) + "\n";
}

}  // namespace qg
