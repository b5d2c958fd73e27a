#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cantor2w/construction.hpp"
#include "cantor2w/error.hpp"
#include "cantor2w/pipeline.hpp"
#include "cantor2w/report.hpp"
#include "cantor2w/snapshot.hpp"

using namespace cantor2w;
using nlohmann::json;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::invalid_config;
}

RunConfig small_config() {
  RunConfig config;
  config.params.depth_omega = 12;
  config.params.depth_sigma = 10;
  config.testing_depth = 8;
  config.k_max = 8;
  config.families.a2_random = 3000;  // keeps depth 8 above 1e4 candidates
  return config;
}

}  // namespace

TEST(Snapshot, DefaultConfigShapeAndRoundTrip) {
  const Construction c{ConstructionParams{}};
  const Snapshot s = make_snapshot(c, Placement::center(), {0.9, 0.7, 0.5, 0.3});
  EXPECT_EQ(s.atoms.size(), (std::size_t{1} << 13) - 1);
  EXPECT_EQ(s.rows.size(), 4u);
  EXPECT_EQ(s.rows[1].offset, 2.0);
  EXPECT_EQ(s.rows[2].offset, 19.0);
  EXPECT_NEAR(s.s0, 9.0, 1e-12);
  ASSERT_EQ(s.generations.size(), 15u);  // the omega tree, generations 0..14
  EXPECT_EQ(s.generations[14].intervals, std::size_t{1} << 14);

  const std::string text = save_snapshot(s);
  const Snapshot back = load_snapshot(text);
  EXPECT_TRUE(back == s);
  EXPECT_EQ(save_snapshot(back), text);
}

TEST(Snapshot, RieszPlacementRoundTrip) {
  ConstructionParams p;
  p.alpha = 1.5;
  p.b = 7.0 / 9.0;
  p.depth_omega = 8;
  p.depth_sigma = 6;
  p.riesz_c = 0.2;
  const Construction c{p};
  const Snapshot s = make_snapshot(c, Placement::riesz(0.2), {0.5});
  const Snapshot back = load_snapshot(save_snapshot(s));
  EXPECT_TRUE(back == s);
  EXPECT_EQ(back.placement.kind, Placement::Kind::riesz);
  ASSERT_TRUE(back.params.riesz_c.has_value());
  EXPECT_EQ(*back.params.riesz_c, 0.2);
}

TEST(Snapshot, RejectsBadDocuments) {
  const Construction c{ConstructionParams{}};
  json doc = to_json(make_snapshot(c, Placement::center(), {0.5}));
  json wrong_version = doc;
  wrong_version["schema_version"] = 99;
  EXPECT_EQ(kind_of([&] { snapshot_from_json(wrong_version); }), ErrorKind::invalid_config);
  json missing = doc;
  missing.erase("atoms");
  EXPECT_EQ(kind_of([&] { snapshot_from_json(missing); }), ErrorKind::invalid_config);
  EXPECT_EQ(kind_of([] { load_snapshot("{not json"); }), ErrorKind::invalid_config);
}

TEST(Report, ChecksAndRelations) {
  EXPECT_TRUE((Check{"a", 1.0, Relation::less_equal, 1.0}).pass());
  EXPECT_FALSE((Check{"a", 1.0, Relation::less, 1.0}).pass());
  EXPECT_TRUE((Check{"a", 2.0, Relation::greater, 1.0}).pass());
  EXPECT_TRUE((Check{"a", 1.0, Relation::greater_equal, 1.0}).pass());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (Relation r : {Relation::less_equal, Relation::greater_equal, Relation::less, Relation::greater}) {
    EXPECT_FALSE((Check{"nan", nan, r, 0.0}).pass());
  }
}

TEST(Report, CsvAndJsonLayout) {
  Report report;
  ClaimResult claim;
  claim.id = "a2-1d";
  claim.checks.push_back({"sup.depth10", 1.5, Relation::less_equal, 2.0});
  claim.checks.push_back({"growth", std::numeric_limits<double>::infinity(), Relation::less_equal, 2.0});
  report.claims.push_back(claim);

  EXPECT_EQ(csv_header(), "claim_id,param,value,bound,pass\n");
  const std::string csv = to_csv(report);
  EXPECT_EQ(csv.rfind("claim_id,param,value,bound,pass\n", 0), 0u);
  EXPECT_NE(csv.find("a2-1d,sup.depth10,1.5,<= 2,true\n"), std::string::npos);
  EXPECT_NE(csv.find("a2-1d,growth,inf,<= 2,false\n"), std::string::npos);

  const json j = to_json(report);
  EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
  EXPECT_FALSE(j["pass"].get<bool>());
  EXPECT_EQ(j["claims"][0]["checks"][1]["value"], "inf");
  EXPECT_EQ(j["claims"][0]["checks"][0]["relation"], "<=");
  ASSERT_NE(report.find("a2-1d"), nullptr);
  EXPECT_NE(report.find("a2-1d")->find("growth"), nullptr);
  EXPECT_EQ(report.find("missing"), nullptr);

  Check nan_check{"x", std::numeric_limits<double>::quiet_NaN(), Relation::less_equal, 1.0};
  EXPECT_TRUE(to_json(nan_check)["value"].is_null());
}

TEST(Pipeline, ClaimParsing) {
  EXPECT_EQ(parse_claims("all"), all_claims());
  const auto picked = parse_claims("offtest-frac,a2-1d");
  ASSERT_EQ(picked.size(), 2u);
  EXPECT_EQ(picked[0], "a2-1d");  // report order
  EXPECT_EQ(kind_of([] { parse_claims(""); }), ErrorKind::invalid_config);
  EXPECT_EQ(kind_of([] { parse_claims("a2-1d,bogus"); }), ErrorKind::invalid_config);
  EXPECT_EQ(all_claims().size(), 8u);
}

TEST(Pipeline, ConfigValidation) {
  RunConfig config = small_config();
  EXPECT_NO_THROW(validate(config));
  config.testing_depth = 11;  // beyond depth_sigma
  EXPECT_THROW(validate(config), Error);
  config = small_config();
  config.n_targets.clear();
  EXPECT_THROW(validate(config), Error);
  config = small_config();
  config.c_grid = {0.5, 1.5};
  EXPECT_THROW(validate(config), Error);
  config = small_config();
  config.params.alpha = 3.0;
  EXPECT_THROW(validate(config), Error);
  EXPECT_THROW(Pipeline{config}, Error);
}

TEST(Pipeline, TestingDivergenceClaim) {
  Pipeline pipeline(small_config());
  const ClaimResult r = pipeline.run("testing-divergence");
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.data["frac"]["values"].size(), 9u);
  ASSERT_NE(r.find("frac.slope"), nullptr);
  EXPECT_GT(r.find("frac.slope")->value, 0.0);
  EXPECT_EQ(kind_of([&] { pipeline.verify({}); }), ErrorKind::invalid_config);
}

TEST(Pipeline, A2StabilityClaim) {
  Pipeline pipeline(small_config());
  const ClaimResult r = pipeline.run("a2-1d");
  EXPECT_TRUE(r.pass());
  ASSERT_NE(r.find("relative_change"), nullptr);
  EXPECT_LE(r.find("relative_change")->value, 0.15);
}

TEST(Pipeline, ReportsAreDeterministic) {
  const std::vector<std::string> claims{"testing-divergence", "lemma-c", "a2-1d", "energy-1d", "offtest-frac"};
  const std::string first = to_json(Pipeline(small_config()).verify(claims)).dump(2);
  const std::string second = to_json(Pipeline(small_config()).verify(claims)).dump(2);
  EXPECT_EQ(first, second);
}

TEST(Pipeline, FixedRieszConstantSkipsTheSearch) {
  RunConfig config = small_config();
  config.params.riesz_c = 0.2;
  Pipeline pipeline(config);
  EXPECT_EQ(pipeline.riesz_c(), 0.2);
  const ClaimResult r = pipeline.run("testing-divergence");
  EXPECT_EQ(r.data["riesz_c"], 0.2);
}

TEST(Sweep, EmptyValuesAndUnknownParameter) {
  EXPECT_EQ(kind_of([] { sweep(small_config(), SweepParameter::alpha, {}, {"a2-1d"}); }),
            ErrorKind::invalid_config);
  EXPECT_EQ(kind_of([] { parse_sweep_parameter("gamma"); }), ErrorKind::invalid_config);
  EXPECT_EQ(parse_sweep_parameter("depth"), SweepParameter::depth);
}

TEST(Sweep, BValuesRecordErrorsAndMonotoneS0) {
  const double values[] = {1.0 / 3.0, 0.35, 0.40};
  const SweepResult result = sweep(small_config(), SweepParameter::b, values, {"a2-1d"});
  ASSERT_EQ(result.entries.size(), 3u);
  EXPECT_TRUE(result.entries[0].pass());
  EXPECT_FALSE(result.entries[1].report.has_value());
  EXPECT_FALSE(result.entries[1].error.empty());
  EXPECT_FALSE(result.pass());
  const json j = to_json(result);
  const auto& summary = j["summary"];
  ASSERT_EQ(summary.size(), 3u);
  EXPECT_LT(summary[0]["s0"].get<double>(), summary[1]["s0"].get<double>());
  EXPECT_LT(summary[1]["s0"].get<double>(), summary[2]["s0"].get<double>());
  const std::string csv = to_csv(result);
  EXPECT_EQ(csv.rfind("sweep_value,claim_id,param,value,bound,pass\n", 0), 0u);
  EXPECT_NE(csv.find("0.34999999999999998,run,error,nan,,false"), std::string::npos);  // round-trip digits
}

TEST(Sweep, AlphaPicksAdmissibleB) {
  const double values[] = {0.0, 1.5};
  RunConfig base = small_config();
  const SweepResult result = sweep(base, SweepParameter::alpha, values, {"a2-1d"});
  ASSERT_EQ(result.entries.size(), 2u);
  EXPECT_NEAR(result.entries[1].config.params.b, 7.0 / 9.0, 1e-12);
  EXPECT_TRUE(result.pass());
}

TEST(Sweep, DepthKeepsTwoExtraAtomizationLevels) {
  const double values[] = {8.0};
  const SweepResult result = sweep(small_config(), SweepParameter::depth, values, {"testing-divergence"});
  ASSERT_EQ(result.entries.size(), 1u);
  EXPECT_EQ(result.entries[0].config.params.depth_sigma, 8);
  EXPECT_EQ(result.entries[0].config.params.depth_omega, 10);
}
