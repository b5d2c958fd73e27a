#include "cantor2w/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cantor2w/a2.hpp"
#include "cantor2w/energy.hpp"
#include "cantor2w/planar.hpp"

namespace cantor2w {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Configuration

void validate(const RunConfig& config) {
  validate(config.params);
  auto fail = [](const std::string& what) { throw Error(ErrorKind::invalid_config, what); };
  const ConstructionParams& p = config.params;
  if (p.depth_sigma < 3) fail("depth_sigma must be at least 3 (stability compares depth_sigma - 2)");
  if (p.depth_omega > 24 || p.depth_sigma > 24) fail("depths above 24 are not supported");
  if (config.testing_depth < 2 || config.testing_depth > p.depth_sigma) {
    fail("testing depth must lie in [2, depth_sigma]");
  }
  if (config.k_max < 1 || config.k_max > p.depth_omega - 4) fail("k_max must lie in [1, depth_omega - 4]");
  if (config.n_targets.empty()) fail("n_targets is empty");
  for (std::size_t i = 0; i < config.n_targets.size(); ++i) {
    const double n = config.n_targets[i];
    if (!(n > 0.0) || !std::isfinite(n)) fail("n_targets must be positive");
    if (i > 0 && !(n > config.n_targets[i - 1])) fail("n_targets must be strictly increasing");
  }
  if (config.c_grid.empty()) fail("c grid is empty");
  for (double c : config.c_grid) {
    if (!(c > 0.0 && c < 1.0)) fail("c grid points must lie in (0,1)");
  }
  if (!(config.quadrature.ratio > 0.0 && config.quadrature.ratio < 1.0)) {
    fail("quadrature ratio must lie in (0,1)");
  }
}

json to_json(const RunConfig& c) {
  json params = {{"alpha", c.params.alpha},
                 {"b", c.params.b},
                 {"s0", c.params.s0()},
                 {"depth_omega", c.params.depth_omega},
                 {"depth_sigma", c.params.depth_sigma}};
  params["riesz_c"] = c.params.riesz_c ? json(*c.params.riesz_c) : json(nullptr);
  return {{"params", params},
          {"testing_depth", c.testing_depth},
          {"k_max", c.k_max},
          {"n_targets", c.n_targets},
          {"c_grid", c.c_grid},
          {"seed", c.seed},
          {"quadrature_ratio", c.quadrature.ratio},
          {"families",
           {{"a2_random", c.families.a2_random},
            {"cube_random", c.families.cube_random},
            {"energy_1d_random", c.families.energy_1d_random},
            {"energy_2d", c.families.energy_2d}}},
          {"bounds",
           {{"a2_1d", c.bounds.a2_1d},
            {"a2_2d", c.bounds.a2_2d},
            {"energy", c.bounds.energy},
            {"stability", c.bounds.stability},
            {"increment_spread", c.bounds.increment_spread},
            {"fit_residual", c.bounds.fit_residual},
            {"lemma_spread", c.bounds.lemma_spread},
            {"gamma_tolerance", c.bounds.gamma_tolerance}}}};
}

const std::vector<std::string>& all_claims() {
  static const std::vector<std::string> ids{"testing-divergence", "lemma-c",  "a2-1d",       "a2-2d",
                                            "energy-1d",          "energy-2d", "offtest-frac", "offtest-riesz"};
  return ids;
}

std::vector<std::string> parse_claims(const std::string& list) {
  std::vector<std::string> picked;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    if (item == "all") {
      picked = all_claims();
      continue;
    }
    if (std::find(all_claims().begin(), all_claims().end(), item) == all_claims().end()) {
      throw Error(ErrorKind::invalid_config, "unknown claim '" + item + "'");
    }
    picked.push_back(item);
  }
  if (picked.empty()) throw Error(ErrorKind::invalid_config, "no claims selected");
  std::vector<std::string> ordered;
  for (const std::string& id : all_claims()) {
    if (std::find(picked.begin(), picked.end(), id) != picked.end()) ordered.push_back(id);
  }
  return ordered;
}

// ---------------------------------------------------------------------------
// Helpers

namespace {

double relative_change(double coarse, double fine) {
  const double scale = std::max(std::abs(coarse), std::abs(fine));
  return scale > 0.0 ? std::abs(fine - coarse) / scale : 0.0;
}

std::string depth_tag(int depth) { return "depth" + std::to_string(depth); }

Check check(std::string name, double value, Relation relation, double bound) {
  return {std::move(name), value, relation, bound};
}

json to_json(const Interval1D& i) { return {{"center", i.center}, {"length", i.length}}; }
json to_json(const Cube2D& c) { return {{"center", {c.center.x, c.center.y}}, {"side", c.side}}; }
json to_json(const Span& s) { return {s.lo, s.hi}; }
json to_json(const Box& b) { return {{"x", to_json(b.x)}, {"y", to_json(b.y)}}; }
json to_json(const EnergySample1D& s) {
  return {{"q", to_json(s.q)}, {"pieces", s.pieces.size()}, {"kind", s.kind}};
}
json to_json(const EnergySample2D& s) {
  return {{"q", to_json(s.q)}, {"pieces", s.pieces.size()}, {"rows_spanned", s.rows_spanned}, {"kind", s.kind}};
}

template <class Witness>
json sup_json(const SupSearchResult<Witness>& r) {
  return {{"value", r.value},
          {"witness", to_json(r.witness)},
          {"candidates", r.candidates},
          {"family", r.family},
          {"class_max", r.class_max},
          {"depth_omega", r.depth_omega},
          {"depth_sigma", r.depth_sigma}};
}

json curve_json(const DivergenceCurve& c) {
  return {{"depths", c.depths},
          {"values", c.values},
          {"increments", c.increments},
          {"slope", c.fit.slope},
          {"intercept", c.fit.intercept},
          {"rms_residual", c.fit.rms_residual},
          {"max_residual", c.fit.max_residual}};
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

// ---------------------------------------------------------------------------
// Pipeline

Pipeline::Pipeline(RunConfig config, Logger log)
    : config_((validate(config), std::move(config))), log_(std::move(log)), construction_(config_.params) {}

void Pipeline::log(const std::string& message) const {
  if (log_) log_(message);
}

const LemmaResult& Pipeline::lemma() {
  if (!lemma_) {
    lemma_ = lemma_search_c(construction_, config_.k_max, config_.c_grid, config_.quadrature);
  }
  return *lemma_;
}

double Pipeline::riesz_c() { return config_.params.riesz_c ? *config_.params.riesz_c : lemma().c; }

const std::vector<GammaSearchResult>& Pipeline::heights(TestKind kind) {
  auto it = heights_.find(kind);
  if (it != heights_.end()) return it->second;
  const Placement placement = kind == TestKind::frac ? Placement::center() : Placement::riesz(riesz_c());
  const SmoothedTestingFunctional F(construction_.sigma(placement), construction_.omega(),
                                    config_.params.alpha, kind, config_.quadrature);
  std::vector<GammaSearchResult> out;
  for (double n : config_.n_targets) out.push_back(gamma_search(F, n));
  return heights_.emplace(kind, std::move(out)).first->second;
}

ClaimResult Pipeline::run(const std::string& id) {
  const Stopwatch watch;
  ClaimResult result;
  if (id == "testing-divergence") {
    result = testing_divergence();
  } else if (id == "lemma-c") {
    result = lemma_claim();
  } else if (id == "a2-1d") {
    result = a2_1d();
  } else if (id == "a2-2d") {
    result = a2_2d_claim();
  } else if (id == "energy-1d") {
    result = energy_1d();
  } else if (id == "energy-2d") {
    result = energy_2d();
  } else if (id == "offtest-frac") {
    result = offtest(TestKind::frac);
  } else if (id == "offtest-riesz") {
    result = offtest(TestKind::riesz);
  } else {
    throw Error(ErrorKind::invalid_config, "unknown claim '" + id + "'");
  }
  char line[128];
  std::snprintf(line, sizeof line, "%s: %s in %.2f s", id.c_str(), result.pass() ? "pass" : "FAIL",
                watch.seconds());
  log(line);
  return result;
}

Report Pipeline::verify(const std::vector<std::string>& claims) {
  if (claims.empty()) throw Error(ErrorKind::invalid_config, "no claims selected");
  Report report;
  report.config = to_json(config_);
  for (const std::string& id : all_claims()) {
    if (std::find(claims.begin(), claims.end(), id) != claims.end()) report.claims.push_back(run(id));
  }
  for (const std::string& id : claims) {
    if (!report.find(id)) throw Error(ErrorKind::invalid_config, "unknown claim '" + id + "'");
  }
  return report;
}

namespace {

void add_curve_checks(ClaimResult& out, const std::string& prefix, const DivergenceCurve& curve,
                      double floor, const Bounds& bounds) {
  const auto [lo, hi] = std::minmax_element(curve.increments.begin(), curve.increments.end());
  out.checks.push_back(check(prefix + ".min_increment", *lo, Relation::greater_equal, floor));
  out.checks.push_back(check(prefix + ".increment_spread", *hi / *lo, Relation::less_equal,
                             bounds.increment_spread));
  out.checks.push_back(check(prefix + ".fit_residual", curve.fit.max_residual / curve.values.back(),
                             Relation::less_equal, bounds.fit_residual));
  out.checks.push_back(check(prefix + ".slope", curve.fit.slope, Relation::greater, 0.0));
}

}  // namespace

ClaimResult Pipeline::testing_divergence() {
  ClaimResult out;
  out.id = "testing-divergence";
  const double alpha = config_.params.alpha;
  const int K = config_.testing_depth;

  // Each generation of the fractional sum is at least 4^(2-alpha): every node
  // of I_j^k lies within |I_j^k|/2 of the gap center.
  const DivergenceCurve frac = testing_partial_sum(construction_, K, TestKind::frac, Placement::center(),
                                                   config_.quadrature);
  add_curve_checks(out, "frac", frac, std::pow(4.0, 2.0 - alpha) * (1.0 - 1e-12), config_.bounds);

  // Cross-check against a coarser atomization of the Cantor measure.
  const Construction coarse = construction_.with_depths(config_.params.depth_omega - 2, config_.params.depth_sigma);
  const DivergenceCurve frac_coarse =
      testing_partial_sum(coarse, K, TestKind::frac, Placement::center(), config_.quadrature);
  out.checks.push_back(check("frac.atomization_change", relative_change(frac_coarse.values.back(), frac.values.back()),
                             Relation::less_equal, config_.bounds.stability));

  // With the placement constant the Riesz sum gains at least C1^2 per generation.
  const double c = riesz_c();
  const DivergenceCurve riesz = testing_partial_sum(construction_, K, TestKind::riesz, Placement::riesz(c),
                                                    config_.quadrature);
  const double c1 = config_.params.riesz_c ? 0.0 : lemma().c1;
  add_curve_checks(out, "riesz", riesz, c1 * c1 * (1.0 - 1e-12), config_.bounds);
  if (config_.params.riesz_c) {
    // Without the search there is no recorded C1; any positive growth counts.
    out.checks[out.checks.size() - 4].relation = Relation::greater;
  }

  out.data = {{"frac", curve_json(frac)},
              {"frac_coarse_atomization", curve_json(frac_coarse)},
              {"riesz", curve_json(riesz)},
              {"riesz_c", c}};
  return out;
}

ClaimResult Pipeline::lemma_claim() {
  ClaimResult out;
  out.id = "lemma-c";
  const LemmaResult& l = lemma();
  out.checks.push_back(check("c1", l.c1, Relation::greater, 0.0));
  out.checks.push_back(check("spread", l.c2 / l.c1, Relation::less_equal, config_.bounds.lemma_spread));
  int violations = 0;
  for (std::size_t k = 0; k < l.left_ratios.size(); ++k) {
    if (!(l.left_ratios[k] <= l.right_ratios[k])) ++violations;
  }
  out.checks.push_back(check("monotonicity_violations", violations, Relation::less_equal, 0.0));

  // Interior indices are recorded for inspection; the rule uses the extremes.
  int sampled_violations = 0;
  json sampled = json::array();
  const double half_s0 = construction_.s0() / 2.0;
  for (int k = 2; k <= config_.k_max; k += 2) {
    const std::size_t count = CantorTree::count(k);
    const double scale = std::pow(half_s0, k);
    const double left = l.left_ratios[static_cast<std::size_t>(k - 1)];
    const double right = l.right_ratios[static_cast<std::size_t>(k - 1)];
    for (std::size_t q = 1; q < 4; ++q) {
      const std::size_t j = q * (count - 1) / 4;
      const double v = riesz_at_gap_point(construction_, k, j, l.c, config_.quadrature) / scale;
      if (v < left * (1.0 - 1e-12) || v > right * (1.0 + 1e-12)) ++sampled_violations;
      sampled.push_back({{"k", k}, {"j", j}, {"ratio", v}});
    }
  }
  json scanned = json::array();
  for (const LemmaCandidate& cand : l.scanned) {
    scanned.push_back({{"c", cand.c}, {"c1", cand.c1}, {"c2", cand.c2}, {"admissible", cand.admissible}});
  }
  out.data = {{"c", l.c},
              {"c1", l.c1},
              {"c2", l.c2},
              {"left_ratios", l.left_ratios},
              {"right_ratios", l.right_ratios},
              {"upper_structure", l.c2 * std::pow(l.c, 2.0 - config_.params.alpha)},
              {"sampled_interior", sampled},
              {"sampled_interior_violations", sampled_violations},
              {"scanned", scanned}};
  return out;
}

ClaimResult Pipeline::a2_1d() {
  ClaimResult out;
  out.id = "a2-1d";
  const int depths[2] = {config_.stability_depth(), config_.params.depth_sigma};
  double sups[2] = {0.0, 0.0};
  json runs = json::object();
  for (int i = 0; i < 2; ++i) {
    const int d = depths[i];
    const Construction c = construction_.with_depths(config_.params.depth_omega, d);
    const Measure1D sigma = c.sigma(Placement::center());
    const Measure1D omega = c.omega();
    const auto family = a2_interval_family(c.tree(), d, config_.seed, config_.families.a2_random);
    auto sup = a2_variant_sup(sigma, omega, config_.params.alpha, family, config_.quadrature);
    sup.depth_omega = config_.params.depth_omega;
    sup.depth_sigma = d;
    sups[i] = sup.value;
    out.checks.push_back(check("candidates." + depth_tag(d), static_cast<double>(family.size()),
                               Relation::greater_equal, 1e4));
    out.checks.push_back(check("sup." + depth_tag(d), sup.value, Relation::less_equal, config_.bounds.a2_1d));
    runs[depth_tag(d)] = sup_json(sup);
  }
  out.checks.push_back(check("relative_change", relative_change(sups[0], sups[1]), Relation::less_equal,
                             config_.bounds.stability));
  out.data = runs;
  return out;
}

namespace {

std::vector<double> gammas(const std::vector<GammaSearchResult>& results) {
  std::vector<double> out;
  for (const auto& r : results) out.push_back(r.gamma);
  return out;
}

}  // namespace

ClaimResult Pipeline::a2_2d_claim() {
  ClaimResult out;
  out.id = "a2-2d";
  const std::vector<double> h = gammas(heights(TestKind::frac));
  const int n_rows = static_cast<int>(h.size());
  const int depths[2] = {config_.stability_depth(), config_.params.depth_sigma};
  double sups[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  json runs = json::object();
  for (int i = 0; i < 2; ++i) {
    const int d = depths[i];
    const Construction c = construction_.with_depths(config_.params.depth_omega, d);
    const PlanarPair pair = build_planar(c.tree_ptr(), n_rows, h, Placement::center());
    const auto family = a2_cube_family(pair.omega, pair.sigma, c.tree(), 5, config_.seed, config_.families.cube_random);
    int spanned[4] = {0, 0, 0, 0};
    for (const CubeCandidate& cand : family) ++spanned[std::min(cand.rows_spanned, 3)];
    out.checks.push_back(check("candidates." + depth_tag(d), static_cast<double>(family.size()),
                               Relation::greater_equal, 1e3));
    json run = {{"rows_spanned", {{"0", spanned[0]}, {"1", spanned[1]}, {"2", spanned[2]}, {"3+", spanned[3]}}}};
    for (int dual = 0; dual < 2; ++dual) {
      auto sup = a2_2d_sup(pair.sigma, pair.omega, config_.params.alpha, dual == 1, family, config_.quadrature);
      sup.depth_omega = config_.params.depth_omega;
      sup.depth_sigma = d;
      sups[dual][i] = sup.value;
      const std::string name = dual ? "dual" : "forward";
      out.checks.push_back(check(name + ".sup." + depth_tag(d), sup.value, Relation::less_equal,
                                 config_.bounds.a2_2d));
      run[name] = sup_json(sup);
    }
    runs[depth_tag(d)] = run;
  }
  out.checks.push_back(check("forward.relative_change", relative_change(sups[0][0], sups[0][1]),
                             Relation::less_equal, config_.bounds.stability));
  out.checks.push_back(check("dual.relative_change", relative_change(sups[1][0], sups[1][1]),
                             Relation::less_equal, config_.bounds.stability));
  runs["heights"] = h;
  out.data = runs;
  return out;
}

namespace {

template <class Sample>
void add_energy_checks(ClaimResult& out, const std::string& name, int depth, std::size_t candidates,
                       const EnergySupResult<Sample>& r, const Bounds& bounds) {
  const std::string tag = name + "." + depth_tag(depth);
  out.checks.push_back(check(tag + ".candidates", static_cast<double>(candidates), Relation::greater_equal, 1e3));
  out.checks.push_back(check(tag + ".sup", r.sup.value, Relation::less_equal, bounds.energy));
  out.checks.push_back(check(tag + ".max_e2", r.max_e2, Relation::less_equal, 0.5));
  out.checks.push_back(check(tag + ".centroids_inside", r.centroids_inside ? 1.0 : 0.0,
                             Relation::greater_equal, 1.0));
}

template <class Sample>
json energy_json(const EnergySupResult<Sample>& r) {
  json j = sup_json(r.sup);
  j["max_e2"] = r.max_e2;
  j["centroids_inside"] = r.centroids_inside;
  return j;
}

}  // namespace

ClaimResult Pipeline::energy_1d() {
  ClaimResult out;
  out.id = "energy-1d";
  const int depths[2] = {config_.stability_depth(), config_.params.depth_sigma};
  double sups[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  json runs = json::object();
  for (int i = 0; i < 2; ++i) {
    const int d = depths[i];
    const Construction c = construction_.with_depths(config_.params.depth_omega, d);
    const Measure1D sigma = c.sigma(Placement::center());
    const Measure1D omega = c.omega();
    const auto family = energy_family_1d(c.tree(), d, config_.seed, config_.families.energy_1d_random);
    json run = json::object();
    for (Direction dir : {Direction::forward, Direction::dual}) {
      auto r = energy_sup(sigma, omega, config_.params.alpha, dir, family, config_.quadrature);
      r.sup.depth_omega = config_.params.depth_omega;
      r.sup.depth_sigma = d;
      sups[dir == Direction::dual][i] = r.sup.value;
      add_energy_checks(out, to_string(dir), d, family.size(), r, config_.bounds);
      run[to_string(dir)] = energy_json(r);
    }
    runs[depth_tag(d)] = run;
  }
  out.checks.push_back(check("forward.relative_change", relative_change(sups[0][0], sups[0][1]),
                             Relation::less_equal, config_.bounds.stability));
  out.checks.push_back(check("dual.relative_change", relative_change(sups[1][0], sups[1][1]),
                             Relation::less_equal, config_.bounds.stability));
  out.data = runs;
  return out;
}

ClaimResult Pipeline::energy_2d() {
  ClaimResult out;
  out.id = "energy-2d";
  const std::vector<double> h = gammas(heights(TestKind::frac));
  const int n_rows = static_cast<int>(h.size());
  const int depths[2] = {config_.stability_depth(), config_.params.depth_sigma};
  double sups[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  json runs = json::object();
  for (int i = 0; i < 2; ++i) {
    const int d = depths[i];
    const Construction c = construction_.with_depths(config_.params.depth_omega, d);
    const PlanarPair pair = build_planar(c.tree_ptr(), n_rows, h, Placement::center());
    const auto family = energy_family_2d(pair.omega, pair.sigma, c.tree(), config_.seed, config_.families.energy_2d);
    json run = json::object();
    for (Direction dir : {Direction::forward, Direction::dual}) {
      auto r = energy_sup(pair.sigma, pair.omega, config_.params.alpha, dir, family, config_.quadrature);
      r.sup.depth_omega = config_.params.depth_omega;
      r.sup.depth_sigma = d;
      sups[dir == Direction::dual][i] = r.sup.value;
      add_energy_checks(out, to_string(dir), d, family.size(), r, config_.bounds);
      run[to_string(dir)] = energy_json(r);
    }
    runs[depth_tag(d)] = run;
  }
  out.checks.push_back(check("forward.relative_change", relative_change(sups[0][0], sups[0][1]),
                             Relation::less_equal, config_.bounds.stability));
  out.checks.push_back(check("dual.relative_change", relative_change(sups[1][0], sups[1][1]),
                             Relation::less_equal, config_.bounds.stability));
  runs["heights"] = h;
  out.data = runs;
  return out;
}

ClaimResult Pipeline::offtest(TestKind kind) {
  ClaimResult out;
  out.id = kind == TestKind::frac ? "offtest-frac" : "offtest-riesz";
  const std::vector<GammaSearchResult>& found = heights(kind);
  const std::vector<double> h = gammas(found);
  const Placement placement = kind == TestKind::frac ? Placement::center() : Placement::riesz(riesz_c());
  const PlanarPair pair = build_planar(construction_.tree_ptr(), static_cast<int>(h.size()), h, placement);
  const auto offsets = row_offsets(config_.params.alpha, static_cast<int>(h.size()));

  json rows = json::array();
  int increasing = 0;
  for (std::size_t i = 0; i < found.size(); ++i) {
    const double n = config_.n_targets[i];
    const Cube2D q = Cube2D::from_corner(offsets[i], -1.0, 1.0);
    const double quotient =
        offtest_quotient(q, kind, 1, pair.sigma, pair.omega, config_.params.alpha, config_.quadrature);
    char tag[32];
    std::snprintf(tag, sizeof tag, "n%g", n);
    out.checks.push_back(check(std::string(tag) + ".relative_error", std::abs(found[i].relative_error()),
                               Relation::less_equal, config_.bounds.gamma_tolerance));
    out.checks.push_back(check(std::string(tag) + ".quotient", quotient, Relation::greater_equal, n));
    if (i > 0 && !(h[i] < h[i - 1])) ++increasing;
    rows.push_back({{"n", n},
                    {"gamma", found[i].gamma},
                    {"F", found[i].value},
                    {"evaluations", found[i].evaluations},
                    {"a_n", offsets[i]},
                    {"quotient", quotient}});
  }
  out.checks.push_back(check("gamma_order_violations", increasing, Relation::less_equal, 0.0));
  out.data = {{"rows", rows}, {"kind", kind == TestKind::frac ? "frac" : "riesz"}};
  if (kind == TestKind::riesz) out.data["riesz_c"] = riesz_c();
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps

SweepParameter parse_sweep_parameter(const std::string& name) {
  if (name == "alpha") return SweepParameter::alpha;
  if (name == "b") return SweepParameter::b;
  if (name == "depth") return SweepParameter::depth;
  throw Error(ErrorKind::invalid_config, "unknown sweep parameter '" + name + "'");
}

const char* to_string(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::alpha: return "alpha";
    case SweepParameter::b: return "b";
    case SweepParameter::depth: return "depth";
  }
  return "?";
}

const std::vector<std::string>& default_sweep_claims() {
  static const std::vector<std::string> ids{"testing-divergence", "lemma-c", "a2-1d", "a2-2d",
                                            "offtest-frac", "offtest-riesz"};
  return ids;
}

bool SweepResult::pass() const {
  if (entries.empty()) return false;
  for (const SweepEntry& e : entries) {
    if (!e.pass()) return false;
  }
  return true;
}

SweepResult sweep(const RunConfig& base, SweepParameter parameter, std::span<const double> values,
                  const std::vector<std::string>& claims, Logger log) {
  if (values.empty()) throw Error(ErrorKind::invalid_config, "empty value list for sweep");
  SweepResult result;
  result.parameter = parameter;
  result.claims = claims;
  for (double v : values) {
    SweepEntry entry;
    entry.value = v;
    entry.config = base;
    ConstructionParams& p = entry.config.params;
    try {
      switch (parameter) {
        case SweepParameter::alpha:
          p.alpha = v;
          if (!(v >= 0.0 && v < 2.0)) throw Error(ErrorKind::invalid_parameters, "alpha must lie in [0,2)");
          p.b = smallest_admissible_b(v);
          break;
        case SweepParameter::b:
          p.b = v;
          break;
        case SweepParameter::depth:
          if (v != std::floor(v)) throw Error(ErrorKind::invalid_config, "depth must be an integer");
          p.depth_sigma = static_cast<int>(v);
          p.depth_omega = p.depth_sigma + 2;
          entry.config.testing_depth = std::min(entry.config.testing_depth, p.depth_sigma);
          entry.config.k_max = std::min(entry.config.k_max, p.depth_omega - 4);
          break;
      }
      if (log) log(std::string("sweep ") + to_string(parameter) + " = " + std::to_string(v));
      Pipeline pipeline(entry.config, log);
      entry.report = pipeline.verify(claims);
    } catch (const Error& e) {
      entry.error = e.what();
      if (log) log("  " + entry.error);
    }
    result.entries.push_back(std::move(entry));
  }
  return result;
}

namespace {

/// s0 straight from the formula, defined even outside the admissibility window.
json formula_s0(const ConstructionParams& p) {
  if (!(p.alpha >= 0.0 && p.alpha < 2.0 && p.b > -1.0 && p.b < 1.0)) return nullptr;
  return std::pow((1.0 - p.b) / 2.0, p.alpha - 2.0);
}

}  // namespace

json to_json(const SweepResult& r) {
  json summary = json::array();
  json reports = json::array();
  for (const SweepEntry& e : r.entries) {
    json row = {{"value", e.value},
                {"alpha", e.config.params.alpha},
                {"b", e.config.params.b},
                {"s0", formula_s0(e.config.params)},
                {"admissible", admissible(e.config.params.alpha, e.config.params.b)},
                {"pass", e.pass()}};
    if (e.report) {
      json claims = json::object();
      for (const ClaimResult& c : e.report->claims) claims[c.id] = c.pass();
      row["claims"] = claims;
      if (const ClaimResult* a2 = e.report->find("a2-1d")) {
        if (const Check* sup = a2->find("sup." + depth_tag(e.config.params.depth_sigma))) {
          row["a2_1d_sup"] = sup->value;
        }
      }
      if (const ClaimResult* t = e.report->find("testing-divergence")) {
        row["testing_slope"] = t->data["frac"]["slope"];
      }
      reports.push_back(to_json(*e.report));
    } else {
      row["error"] = e.error;
      reports.push_back(nullptr);
    }
    summary.push_back(row);
  }
  return {{"schema_version", kReportSchemaVersion},
          {"parameter", to_string(r.parameter)},
          {"claims", r.claims},
          {"pass", r.pass()},
          {"summary", summary},
          {"reports", reports}};
}

std::string to_csv(const SweepResult& r) {
  std::string out = "sweep_value," + csv_header();
  char value[32];
  for (const SweepEntry& e : r.entries) {
    std::snprintf(value, sizeof value, "%.17g", e.value);
    if (!e.report) {
      out += std::string(value) + ",run,error,nan,,false\n";
      continue;
    }
    std::stringstream rows(to_csv_rows(*e.report));
    std::string line;
    while (std::getline(rows, line)) out += std::string(value) + "," + line + "\n";
  }
  return out;
}

}  // namespace cantor2w
