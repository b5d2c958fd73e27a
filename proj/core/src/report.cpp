#include "cantor2w/report.hpp"

#include <cmath>
#include <cstdio>

namespace cantor2w {

const char* to_string(Relation relation) {
  switch (relation) {
    case Relation::less_equal: return "<=";
    case Relation::greater_equal: return ">=";
    case Relation::less: return "<";
    case Relation::greater: return ">";
  }
  return "?";
}

bool Check::pass() const {
  if (std::isnan(value) || std::isnan(bound)) return false;
  switch (relation) {
    case Relation::less_equal: return value <= bound;
    case Relation::greater_equal: return value >= bound;
    case Relation::less: return value < bound;
    case Relation::greater: return value > bound;
  }
  return false;
}

bool ClaimResult::pass() const {
  if (checks.empty()) return false;
  for (const Check& c : checks) {
    if (!c.pass()) return false;
  }
  return true;
}

const Check* ClaimResult::find(const std::string& name) const {
  for (const Check& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool Report::pass() const {
  for (const ClaimResult& c : claims) {
    if (!c.pass()) return false;
  }
  return !claims.empty();
}

const ClaimResult* Report::find(const std::string& id) const {
  for (const ClaimResult& c : claims) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

namespace {

// JSON has no infinities; they only arise as bounds of one-sided rules.
nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

std::string format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

nlohmann::json to_json(const Check& check) {
  return {{"name", check.name},
          {"value", number(check.value)},
          {"relation", to_string(check.relation)},
          {"bound", number(check.bound)},
          {"pass", check.pass()}};
}

nlohmann::json to_json(const ClaimResult& claim) {
  nlohmann::json checks = nlohmann::json::array();
  for (const Check& c : claim.checks) checks.push_back(to_json(c));
  return {{"id", claim.id}, {"pass", claim.pass()}, {"checks", checks}, {"data", claim.data}};
}

nlohmann::json to_json(const Report& report) {
  nlohmann::json claims = nlohmann::json::array();
  for (const ClaimResult& c : report.claims) claims.push_back(to_json(c));
  return {{"schema_version", kReportSchemaVersion},
          {"config", report.config},
          {"pass", report.pass()},
          {"claims", claims}};
}

std::string csv_header() { return "claim_id,param,value,bound,pass\n"; }

std::string to_csv_rows(const Report& report) {
  std::string out;
  for (const ClaimResult& claim : report.claims) {
    for (const Check& c : claim.checks) {
      out += claim.id + "," + c.name + "," + format(c.value) + "," + to_string(c.relation) + " " +
             format(c.bound) + "," + (c.pass() ? "true" : "false") + "\n";
    }
  }
  return out;
}

std::string to_csv(const Report& report) { return csv_header() + to_csv_rows(report); }

}  // namespace cantor2w
