#pragma once

// Report documents and their JSON / CSV encodings.
//
// JSON numbers are written shortest-round-trip; non-finite values become the
// strings "inf", "-inf", "nan". CSV numbers use 17 significant digits.

#include <cmath>
#include <ctime>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "opineq/suite.hpp"

namespace opineq {

inline constexpr const char* kToolVersion = "0.1.0";

struct CheckTally {
  std::int64_t pass = 0;
  std::int64_t fail = 0;
  std::int64_t notApplicable = 0;
};

struct ReportDocument {
  std::string toolVersion = kToolVersion;
  std::string timestamp;
  nlohmann::ordered_json plan = nlohmann::ordered_json::object();
  std::vector<CheckResult> results;

  /// Tallies per check id, in first-appearance order of the results.
  std::vector<std::pair<std::string, CheckTally>> summary() const {
    std::vector<std::pair<std::string, CheckTally>> out;
    std::map<std::string, std::size_t> where;
    for (const CheckResult& r : results) {
      auto [it, fresh] = where.try_emplace(r.checkId, out.size());
      if (fresh) out.emplace_back(r.checkId, CheckTally{});
      CheckTally& t = out[it->second].second;
      switch (r.status) {
        case Status::Pass: ++t.pass; break;
        case Status::Fail: ++t.fail; break;
        case Status::NotApplicable: ++t.notApplicable; break;
      }
    }
    return out;
  }

  bool any_fail() const {
    for (const CheckResult& r : results)
      if (r.status == Status::Fail) return true;
    return false;
  }
};

/// Current UTC time as ISO 8601.
inline std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace detail {

inline nlohmann::ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

inline nlohmann::ordered_json number(const std::optional<double>& x) {
  if (!x) return nullptr;
  return number(*x);
}

inline nlohmann::ordered_json param_json(const ParamValue& v) {
  return std::visit(
      [](const auto& x) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) return number(x);
        else return x;
      },
      v);
}

inline std::string param_text(const ParamValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) return format_double17(x);
        else if constexpr (std::is_same_v<T, std::string>) return x;
        else return std::to_string(x);
      },
      v);
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_number(const std::optional<double>& x) { return x ? format_double17(*x) : ""; }

}  // namespace detail

inline nlohmann::ordered_json to_json(const CheckResult& r) {
  nlohmann::ordered_json j;
  j["checkId"] = r.checkId;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = detail::param_json(v);
  j["params"] = std::move(params);
  j["status"] = to_string(r.status);
  j["holds"] = r.holds ? nlohmann::ordered_json(*r.holds) : nlohmann::ordered_json(nullptr);
  j["lhs"] = detail::number(r.lhs);
  j["rhs"] = detail::number(r.rhs);
  const bool applicable = r.status != Status::NotApplicable;
  j["margin"] = applicable ? detail::number(r.margin) : nlohmann::ordered_json(nullptr);
  j["allowance"] = applicable ? detail::number(r.allowance) : nlohmann::ordered_json(nullptr);
  j["scale"] = applicable ? detail::number(r.scale) : nlohmann::ordered_json(nullptr);
  j["ratio"] = detail::number(r.ratio);
  j["witness"] = detail::number(r.witness);
  j["notes"] = r.notes;
  return j;
}

inline nlohmann::ordered_json plan_json(const SuitePlan& plan) {
  nlohmann::ordered_json j;
  j["suite"] = plan.suite;
  j["checks"] = plan.checks;
  j["dims"] = plan.dims;
  j["trials"] = plan.trials;
  j["seed"] = std::to_string(plan.seed);
  auto list = [](const auto& opt, auto&& toJson) -> nlohmann::ordered_json {
    if (!opt) return "default";
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& x : *opt) a.push_back(toJson(x));
    return a;
  };
  j["v"] = list(plan.overrides.v, [](double x) { return detail::number(x); });
  j["p"] = list(plan.overrides.p, [](double x) { return detail::number(x); });
  j["norms"] = list(plan.overrides.norms, [](const NormDescriptor& n) { return nlohmann::ordered_json(n.to_string()); });
  j["means"] = list(plan.overrides.means, [](const MeanDescriptor& m) { return nlohmann::ordered_json(m.to_string()); });
  j["tolerances"] = {{"absTol", plan.tol.absTol}, {"relTol", plan.tol.relTol}};
  j["prng"] = "splitmix64-counter";
  return j;
}

inline nlohmann::ordered_json to_json(const ReportDocument& doc) {
  nlohmann::ordered_json j;
  j["toolVersion"] = doc.toolVersion;
  j["timestamp"] = doc.timestamp;
  j["plan"] = doc.plan;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  CheckTally total;
  for (const auto& [id, t] : doc.summary()) {
    summary[id] = {{"pass", t.pass}, {"fail", t.fail}, {"notApplicable", t.notApplicable}};
    total.pass += t.pass;
    total.fail += t.fail;
    total.notApplicable += t.notApplicable;
  }
  j["summary"] = std::move(summary);
  j["totals"] = {{"pass", total.pass}, {"fail", total.fail}, {"notApplicable", total.notApplicable}};
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  for (const CheckResult& r : doc.results) results.push_back(to_json(r));
  j["results"] = std::move(results);
  return j;
}

inline std::string render_json(const ReportDocument& doc) { return to_json(doc).dump(2) + "\n"; }

/// One row per result; params flattened into sorted params.<key> columns.
inline std::string render_csv(const ReportDocument& doc) {
  std::set<std::string> keys;
  for (const CheckResult& r : doc.results)
    for (const auto& [k, v] : r.params) keys.insert(k);
  std::ostringstream os;
  os << "checkId,status,holds,lhs,rhs,margin,allowance,scale,ratio,witness,notes";
  for (const auto& k : keys) os << ',' << detail::csv_field("params." + k);
  os << '\n';
  for (const CheckResult& r : doc.results) {
    const bool applicable = r.status != Status::NotApplicable;
    os << detail::csv_field(r.checkId) << ',' << to_string(r.status) << ','
       << (r.holds ? (*r.holds ? "true" : "false") : "") << ',' << detail::csv_number(r.lhs) << ','
       << detail::csv_number(r.rhs) << ',' << (applicable ? format_double17(r.margin) : "") << ','
       << (applicable ? format_double17(r.allowance) : "") << ',' << (applicable ? format_double17(r.scale) : "")
       << ',' << detail::csv_number(r.ratio) << ',' << detail::csv_number(r.witness) << ','
       << detail::csv_field(r.notes);
    for (const auto& k : keys) {
      os << ',';
      if (auto it = r.params.find(k); it != r.params.end()) os << detail::csv_field(detail::param_text(it->second));
    }
    os << '\n';
  }
  return os.str();
}

enum class ReportFormat { Json, Csv };

inline ReportFormat parse_format(std::string_view s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  throw ConfigParse("unknown format '" + std::string(s) + "' (json, csv)");
}

inline std::string render(const ReportDocument& doc, ReportFormat fmt) {
  return fmt == ReportFormat::Json ? render_json(doc) : render_csv(doc);
}

/// Writes the report; path "-" means standard output is handled by the caller.
inline void emit_report(const ReportDocument& doc, ReportFormat fmt, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOFailure("cannot open '" + path + "' for writing");
  out << render(doc, fmt);
  out.flush();
  if (!out) throw IOFailure("write to '" + path + "' failed");
}

inline nlohmann::ordered_json to_json(const ScanRow& row) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : row.params) params[k] = detail::param_json(v);
  j["params"] = std::move(params);
  j["evaluated"] = row.evaluated;
  j["notApplicable"] = row.notApplicable;
  j["maxRatio"] = detail::number(row.maxRatio);
  if (row.maxRatio) j["argmax"] = {{"dim", row.argmaxDim}, {"trial", row.argmaxTrial}, {"digest", row.argmaxDigest}};
  else j["argmax"] = nullptr;
  j["violation"] = row.violation;
  return j;
}

}  // namespace opineq
