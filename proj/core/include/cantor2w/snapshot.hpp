#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cantor2w/construction.hpp"

namespace cantor2w {

inline constexpr int kSnapshotSchemaVersion = 1;

struct GenerationSummary {
  int generation;
  std::size_t intervals;
  double length;
  bool operator==(const GenerationSummary&) const = default;
};

struct RowLayout {
  double offset;
  double height;
  bool operator==(const RowLayout&) const = default;
};

/// Plain-data image of a construction: params, per-generation tree summary,
/// the gap atoms and the planar row layout.
struct Snapshot {
  ConstructionParams params;
  double s0 = 0.0;
  Placement placement;
  std::vector<GenerationSummary> generations;
  std::vector<Atom> atoms;
  std::vector<RowLayout> rows;
};

bool operator==(const Snapshot& a, const Snapshot& b);

/// Snapshot of the gap atoms of `construction` at depth_sigma with rows at
/// the given heights (offsets from the row recursion).
Snapshot make_snapshot(const Construction& construction, Placement placement,
                       const std::vector<double>& heights);

nlohmann::json to_json(const Snapshot& snapshot);
/// Throws invalid_config on a missing field or an unknown schema version.
Snapshot snapshot_from_json(const nlohmann::json& document);

std::string save_snapshot(const Snapshot& snapshot);
Snapshot load_snapshot(const std::string& text);

}  // namespace cantor2w
