#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cantor2w/construction.hpp"
#include "cantor2w/divergence.hpp"
#include "cantor2w/error.hpp"
#include "cantor2w/report.hpp"

namespace cantor2w {

/// Acceptance thresholds.  The three constants are the recorded bounds for
/// the sampled suprema; the rest are the tolerances of the individual rules.
struct Bounds {
  double a2_1d = 400.0;
  double a2_2d = 12.0;
  double energy = 3.0;
  double stability = 0.15;        // relative change between the two depths
  double increment_spread = 10.0; // largest / smallest per-generation increment
  double fit_residual = 0.05;     // largest fit residual / S(K)
  double lemma_spread = 1e3;      // C2 / C1
  double gamma_tolerance = 1e-6;  // |F(gamma) - n| / n
};

struct FamilySizes {
  std::size_t a2_random = 2000;
  std::size_t cube_random = 1000;
  std::size_t energy_1d_random = 900;
  std::size_t energy_2d = 1000;
};

struct RunConfig {
  ConstructionParams params;
  int testing_depth = 10;  // K of the testing partial sums
  int k_max = 10;          // generations checked by the placement search
  std::vector<double> n_targets{1.0, 2.0, 4.0, 8.0};
  std::vector<double> c_grid{0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45};
  FamilySizes families;
  std::uint64_t seed = 20240917;
  QuadratureOptions quadrature;
  Bounds bounds;

  /// The coarser of the two depths compared by the stability rules.
  int stability_depth() const { return params.depth_sigma - 2; }
};

/// Throws invalid_config (or invalid_parameters for the construction itself).
void validate(const RunConfig& config);
nlohmann::json to_json(const RunConfig& config);

/// Claim ids in report order.
const std::vector<std::string>& all_claims();
/// Splits a comma list, validates the ids and returns them in report order.
std::vector<std::string> parse_claims(const std::string& list);

using Logger = std::function<void(const std::string&)>;

/// Runs claims against one configuration, caching the construction, the
/// placement constant and the row heights between claims.
class Pipeline {
 public:
  explicit Pipeline(RunConfig config, Logger log = {});

  const RunConfig& config() const { return config_; }
  const Construction& construction() const { return construction_; }
  const LemmaResult& lemma();
  /// The Riesz placement constant: params.riesz_c when set, else the search.
  double riesz_c();
  /// gamma_search results for every n_target (in order) for the kind.
  const std::vector<GammaSearchResult>& heights(TestKind kind);

  ClaimResult run(const std::string& claim_id);
  Report verify(const std::vector<std::string>& claims);

 private:
  ClaimResult testing_divergence();
  ClaimResult lemma_claim();
  ClaimResult a2_1d();
  ClaimResult a2_2d_claim();
  ClaimResult energy_1d();
  ClaimResult energy_2d();
  ClaimResult offtest(TestKind kind);
  void log(const std::string& message) const;

  RunConfig config_;
  Logger log_;
  Construction construction_;
  std::optional<LemmaResult> lemma_;
  std::map<TestKind, std::vector<GammaSearchResult>> heights_;
};

enum class SweepParameter { alpha, b, depth };

SweepParameter parse_sweep_parameter(const std::string& name);
const char* to_string(SweepParameter parameter);

struct SweepEntry {
  double value = 0.0;
  RunConfig config;
  std::optional<Report> report;
  std::string error;  // empty unless the run threw
  bool pass() const { return report && report->pass(); }
};

struct SweepResult {
  SweepParameter parameter = SweepParameter::alpha;
  std::vector<std::string> claims;
  std::vector<SweepEntry> entries;
  bool pass() const;
};

/// Claims run by a sweep unless the caller picks others.
const std::vector<std::string>& default_sweep_claims();

/// One verify run per value.  alpha: b is re-chosen as the smallest admissible
/// value; b: alpha stays; depth: depth_sigma = value and depth_omega = value + 2.
/// Errors in one run are recorded in its entry and the sweep continues.
/// Throws invalid_config for an empty value list.
SweepResult sweep(const RunConfig& base, SweepParameter parameter, std::span<const double> values,
                  const std::vector<std::string>& claims, Logger log = {});

nlohmann::json to_json(const SweepResult& result);
std::string to_csv(const SweepResult& result);

}  // namespace cantor2w
