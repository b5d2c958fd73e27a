#include "cantor2w/snapshot.hpp"

#include "cantor2w/error.hpp"
#include "cantor2w/planar.hpp"

namespace cantor2w {

using nlohmann::json;

bool operator==(const Snapshot& a, const Snapshot& b) {
  auto same_params = [](const ConstructionParams& p, const ConstructionParams& q) {
    return p.alpha == q.alpha && p.b == q.b && p.depth_omega == q.depth_omega &&
           p.depth_sigma == q.depth_sigma && p.riesz_c == q.riesz_c;
  };
  auto same_atoms = [](const std::vector<Atom>& x, const std::vector<Atom>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].x != y[i].x || x[i].mass != y[i].mass) return false;
    }
    return true;
  };
  return same_params(a.params, b.params) && a.s0 == b.s0 && a.placement.kind == b.placement.kind &&
         a.placement.c == b.placement.c && a.generations == b.generations && same_atoms(a.atoms, b.atoms) &&
         a.rows == b.rows;
}

Snapshot make_snapshot(const Construction& construction, Placement placement,
                       const std::vector<double>& heights) {
  Snapshot s;
  s.params = construction.params();
  s.s0 = construction.s0();
  s.placement = placement;
  const CantorTree& tree = construction.tree();
  for (int k = 0; k <= tree.depth(); ++k) s.generations.push_back({k, CantorTree::count(k), tree.length(k)});
  const AtomicMeasure1D sigma = construction.sigma(placement);
  const auto xs = sigma.positions();
  const auto ms = sigma.masses();
  for (std::size_t i = 0; i < xs.size(); ++i) s.atoms.push_back({xs[i], ms[i]});
  const auto offsets = row_offsets(s.params.alpha, static_cast<int>(heights.size()));
  for (std::size_t n = 0; n < heights.size(); ++n) s.rows.push_back({offsets[n], heights[n]});
  return s;
}

json to_json(const Snapshot& s) {
  json params = {{"alpha", s.params.alpha},
                 {"b", s.params.b},
                 {"s0", s.s0},
                 {"depth_omega", s.params.depth_omega},
                 {"depth_sigma", s.params.depth_sigma}};
  params["riesz_c"] = s.params.riesz_c ? json(*s.params.riesz_c) : json(nullptr);
  json generations = json::array();
  for (const auto& g : s.generations) {
    generations.push_back({{"k", g.generation}, {"intervals", g.intervals}, {"length", g.length}});
  }
  json atoms = json::array();
  for (const auto& a : s.atoms) atoms.push_back({{"x", a.x}, {"mass", a.mass}});
  json rows = json::array();
  for (const auto& r : s.rows) rows.push_back({{"a_n", r.offset}, {"height", r.height}});
  return {{"schema_version", kSnapshotSchemaVersion},
          {"params", params},
          {"placement",
           {{"kind", s.placement.kind == Placement::Kind::center ? "center" : "riesz"}, {"c", s.placement.c}}},
          {"generations", generations},
          {"atoms", atoms},
          {"rows", rows}};
}

Snapshot snapshot_from_json(const json& doc) {
  try {
    if (doc.at("schema_version").get<int>() != kSnapshotSchemaVersion) {
      throw Error(ErrorKind::invalid_config, "unsupported snapshot schema_version");
    }
    Snapshot s;
    const json& p = doc.at("params");
    s.params.alpha = p.at("alpha").get<double>();
    s.params.b = p.at("b").get<double>();
    s.params.depth_omega = p.at("depth_omega").get<int>();
    s.params.depth_sigma = p.at("depth_sigma").get<int>();
    if (!p.at("riesz_c").is_null()) s.params.riesz_c = p.at("riesz_c").get<double>();
    s.s0 = p.at("s0").get<double>();
    const json& placement = doc.at("placement");
    const std::string kind = placement.at("kind").get<std::string>();
    if (kind != "center" && kind != "riesz") throw Error(ErrorKind::invalid_config, "unknown placement kind");
    s.placement.kind = kind == "center" ? Placement::Kind::center : Placement::Kind::riesz;
    s.placement.c = placement.at("c").get<double>();
    for (const json& g : doc.at("generations")) {
      s.generations.push_back(
          {g.at("k").get<int>(), g.at("intervals").get<std::size_t>(), g.at("length").get<double>()});
    }
    for (const json& a : doc.at("atoms")) s.atoms.push_back({a.at("x").get<double>(), a.at("mass").get<double>()});
    for (const json& r : doc.at("rows")) s.rows.push_back({r.at("a_n").get<double>(), r.at("height").get<double>()});
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::invalid_config, std::string("malformed snapshot: ") + e.what());
  }
}

std::string save_snapshot(const Snapshot& snapshot) { return to_json(snapshot).dump(1) + "\n"; }

Snapshot load_snapshot(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::invalid_config, std::string("malformed snapshot: ") + e.what());
  }
  return snapshot_from_json(doc);
}

}  // namespace cantor2w
