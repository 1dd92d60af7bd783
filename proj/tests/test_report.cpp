#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_util.hpp"

using namespace opineq;
using nlohmann::json;

namespace {

CheckResult pass_result() {
  CheckResult r = norm_check("gt-classic", {{"dim", std::int64_t{2}}, {"v", 0.5}, {"norm", std::string("schatten:inf")}},
                             1.0, 2.0, TolerancePolicy{});
  return r;
}

CheckResult fail_result() {
  CheckResult r = norm_check("thm34", {{"dim", std::int64_t{8}}, {"part", std::string("eq10")}}, 3.0, 1.0, {});
  r.notes = "lhs, \"quoted\"";
  return r;
}

CheckResult na_result() { return not_applicable("lemma21", {{"v", 2.0}}, -1.0 / 3.0, "harmonic chain undefined"); }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(ReportJson, EmptyDocument) {
  ReportDocument doc;
  doc.timestamp = "2020-01-01T00:00:00Z";
  const json j = json::parse(render_json(doc));
  EXPECT_EQ(j["toolVersion"], kToolVersion);
  EXPECT_TRUE(j["results"].empty());
  EXPECT_TRUE(j["summary"].empty());
  EXPECT_EQ(j["totals"]["pass"], 0);
  EXPECT_EQ(j["totals"]["fail"], 0);
  EXPECT_EQ(j["totals"]["notApplicable"], 0);
  EXPECT_FALSE(doc.any_fail());
}

TEST(ReportJson, FieldsAndSummary) {
  ReportDocument doc;
  doc.results = {pass_result(), fail_result(), na_result(), pass_result()};
  const json j = json::parse(render_json(doc));
  ASSERT_EQ(j["results"].size(), 4u);
  const json& p = j["results"][0];
  EXPECT_EQ(p["checkId"], "gt-classic");
  EXPECT_EQ(p["status"], "pass");
  EXPECT_EQ(p["holds"], true);
  EXPECT_EQ(p["lhs"], 1.0);
  EXPECT_EQ(p["margin"], 1.0);
  EXPECT_EQ(p["ratio"], 0.5);
  EXPECT_EQ(p["params"]["dim"], 2);
  EXPECT_EQ(p["params"]["norm"], "schatten:inf");
  EXPECT_TRUE(p["witness"].is_null());

  const json& na = j["results"][2];
  EXPECT_EQ(na["status"], "not_applicable");
  EXPECT_TRUE(na["holds"].is_null());
  EXPECT_TRUE(na["margin"].is_null());
  EXPECT_EQ(na["witness"].get<double>(), -1.0 / 3.0);

  EXPECT_EQ(j["summary"]["gt-classic"]["pass"], 2);
  EXPECT_EQ(j["summary"]["thm34"]["fail"], 1);
  EXPECT_EQ(j["summary"]["lemma21"]["notApplicable"], 1);
  EXPECT_EQ(j["totals"]["pass"], 2);
  EXPECT_EQ(j["totals"]["fail"], 1);
  EXPECT_TRUE(doc.any_fail());

  // Summary counts equal a direct tally.
  std::int64_t passes = 0;
  for (const auto& r : j["results"]) passes += r["status"] == "pass";
  EXPECT_EQ(passes, j["totals"]["pass"]);
}

TEST(ReportJson, TinyMarginRoundTrips) {
  CheckResult r = pass_result();
  r.margin = 1e-17;
  ReportDocument doc;
  doc.results = {r};
  const json j = json::parse(render_json(doc));
  EXPECT_EQ(j["results"][0]["margin"].get<double>(), 1e-17);

  const double odd = 0.1 + 0.2;
  r.margin = odd;
  doc.results = {r};
  EXPECT_EQ(json::parse(render_json(doc))["results"][0]["margin"].get<double>(), odd);
}

TEST(ReportJson, NonFiniteBecomesString) {
  CheckResult r = norm_check("gt-trace", {}, INFINITY, 1.0, {});
  ASSERT_EQ(r.status, Status::Fail);
  ReportDocument doc;
  doc.results = {r};
  const std::string text = render_json(doc);
  const json j = json::parse(text);
  EXPECT_EQ(j["results"][0]["lhs"], "inf");
  EXPECT_EQ(j["results"][0]["margin"], "-inf");
  EXPECT_EQ(text.find("NaN"), std::string::npos);
}

TEST(ReportJson, PlanBlock) {
  SuitePlan plan = SuitePlan::named("quick");
  plan.seed = 18446744073709551615ULL;
  plan.overrides.v = std::vector<double>{0.25};
  const json j = plan_json(plan);
  EXPECT_EQ(j["seed"], "18446744073709551615");
  EXPECT_EQ(j["trials"], 20);
  EXPECT_EQ(j["v"], json::array({0.25}));
  EXPECT_EQ(j["p"], "default");
  EXPECT_EQ(j["prng"], "splitmix64-counter");
  EXPECT_EQ(j["checks"].size(), kCheckIds.size());
}

TEST(ReportCsv, HeaderAndRows) {
  ReportDocument doc;
  doc.results = {pass_result(), fail_result(), na_result()};
  const auto ls = lines(render_csv(doc));
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(ls[0],
            "checkId,status,holds,lhs,rhs,margin,allowance,scale,ratio,witness,notes,"
            "params.dim,params.norm,params.part,params.v");
  EXPECT_EQ(ls[1].rfind("gt-classic,pass,true,1,2,1,", 0), 0u) << ls[1];
  EXPECT_NE(ls[2].find("\"lhs, \"\"quoted\"\"\""), std::string::npos) << ls[2];
  EXPECT_EQ(ls[3].rfind("lemma21,not_applicable,,,,,,,,", 0), 0u) << ls[3];
}

TEST(ReportCsv, EmptyDocumentIsHeaderOnly) {
  ReportDocument doc;
  EXPECT_EQ(render_csv(doc), "checkId,status,holds,lhs,rhs,margin,allowance,scale,ratio,witness,notes\n");
}

TEST(ReportFormat, Parse) {
  EXPECT_EQ(parse_format("json"), ReportFormat::Json);
  EXPECT_EQ(parse_format("csv"), ReportFormat::Csv);
  EXPECT_THROW(parse_format("xml"), ConfigParse);
}

TEST(EmitReport, WritesAndFails) {
  ReportDocument doc;
  doc.results = {pass_result()};
  const auto path = std::filesystem::temp_directory_path() / "opineq_report_test.json";
  emit_report(doc, ReportFormat::Json, path.string());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), render_json(doc));
  std::filesystem::remove(path);
  EXPECT_THROW(emit_report(doc, ReportFormat::Json, "/nonexistent-dir/x/report.json"), IOFailure);
}

TEST(ScanRowJson, Shape) {
  ScanRow row;
  row.params = {{"v", 1.5}};
  row.evaluated = 3;
  const json empty = json::parse(to_json(row).dump());
  EXPECT_TRUE(empty["maxRatio"].is_null());
  EXPECT_TRUE(empty["argmax"].is_null());
  row.maxRatio = 0.9;
  row.argmaxDim = 2;
  row.argmaxDigest = "0123456789abcdef";
  const json full = json::parse(to_json(row).dump());
  EXPECT_EQ(full["maxRatio"], 0.9);
  EXPECT_EQ(full["argmax"]["dim"], 2);
  EXPECT_EQ(full["violation"], false);
}
