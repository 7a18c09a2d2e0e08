#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qg/arena.hpp"
#include "qg/stats.hpp"

namespace qg {

// Text format, one directive per line, '#' starts a comment:
//   objective mcr|tp
//   vertex <name> min|max [target]
//   edge <src> <dst> <integer>
// Parallel edges are merged (max weight for a Max source, min for Min) and
// reported through `warnings`.
Arena parse(std::string_view text, std::vector<std::string>* warnings = nullptr);
Arena parse_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

// Canonical text: vertices in index order, edges sorted by (src, dst).
std::string serialize(const Arena& arena);

std::string export_dot(const Arena& arena, const ValueVector* annot = nullptr);

enum class Family : std::uint8_t { Fig1a, Fig2a, Fig2b, LspFig5, Layered };

struct FamilySpec {
  Family family = Family::Fig1a;
  Weight W = 1;
  std::size_t n = 1;
  std::optional<Objective> objective;  // overrides the family default
};

Family parse_family(std::string_view name);
const char* to_string(Family family);
Arena generate(const FamilySpec& spec);

nlohmann::ordered_json values_json(const Arena& arena, const ValueVector& values);
std::string write_results_json(const Arena& arena, const ValueVector& values, const SolveStats& stats,
                               const std::optional<nlohmann::ordered_json>& strategies = std::nullopt);

}  // namespace qg
