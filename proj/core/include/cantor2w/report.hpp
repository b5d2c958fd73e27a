#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cantor2w {

inline constexpr int kReportSchemaVersion = 1;

enum class Relation { less_equal, greater_equal, less, greater };

const char* to_string(Relation relation);

/// One acceptance rule: `value relation bound`.  NaN never passes.
struct Check {
  std::string name;
  double value = 0.0;
  Relation relation = Relation::less_equal;
  double bound = 0.0;

  bool pass() const;
};

struct ClaimResult {
  std::string id;
  std::vector<Check> checks;
  nlohmann::json data = nlohmann::json::object();

  bool pass() const;
  /// Check by name; nullptr when absent.
  const Check* find(const std::string& name) const;
};

struct Report {
  nlohmann::json config = nlohmann::json::object();
  std::vector<ClaimResult> claims;

  bool pass() const;
  const ClaimResult* find(const std::string& id) const;
};

nlohmann::json to_json(const Check& check);
nlohmann::json to_json(const ClaimResult& claim);
nlohmann::json to_json(const Report& report);

/// Header `claim_id,param,value,bound,pass`, one line per check.
std::string csv_header();
std::string to_csv_rows(const Report& report);
std::string to_csv(const Report& report);

}  // namespace cantor2w
