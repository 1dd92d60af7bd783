// opineq: run inequality suites, print constants, limit studies and tightness scans.
//
// Exit codes: 0 no Fail, 1 at least one Fail (or scan violation), 2 usage or config error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "opineq/opineq.hpp"

namespace {

using namespace opineq;
using ojson = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

template <class T, class Parse>
std::vector<T> parse_all(const std::vector<std::string>& items, Parse parse) {
  std::vector<T> out;
  for (const auto& s : items) out.push_back(parse(s));
  return out;
}

std::vector<double> parse_doubles(const std::vector<std::string>& items) {
  return parse_all<double>(items, [](const std::string& s) { return parse_double(s); });
}

std::vector<NormDescriptor> parse_norms(const std::vector<std::string>& items) {
  return parse_all<NormDescriptor>(items, [](const std::string& s) { return parse_norm(s); });
}

std::vector<MeanDescriptor> parse_means(const std::vector<std::string>& items) {
  return parse_all<MeanDescriptor>(items, [](const std::string& s) { return parse_mean(s); });
}

std::vector<Index> to_dims(const std::vector<long long>& xs) {
  std::vector<Index> out;
  for (long long x : xs) {
    if (x < 1) throw ConfigParse("dims must be >= 1");
    out.push_back(static_cast<Index>(x));
  }
  return out;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOFailure("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IOFailure("write to '" + path + "' failed");
}

void print_summary(const ReportDocument& doc) {
  for (const auto& [id, t] : doc.summary())
    std::cerr << id << ": pass " << t.pass << ", fail " << t.fail << ", not_applicable " << t.notApplicable << "\n";
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite;
  std::string planFile;
  std::vector<std::string> checks;
  std::vector<long long> dims;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> v, p, norms, means;
  double tolAbs = 0.0, tolRel = 0.0;
  int threads = 1;
  std::string out = "-";
  std::string format = "json";
};

/// Applies a JSON plan file on top of `plan`.
void apply_plan_file(SuitePlan& plan, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOFailure("cannot read plan file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigParse(std::string("plan file: ") + e.what());
  }
  if (!j.is_object()) throw ConfigParse("plan file must hold a JSON object");
  try {
    if (j.contains("suite")) {
      const SuitePlan named = SuitePlan::named(j["suite"].get<std::string>());
      plan.suite = named.suite;
      plan.trials = named.trials;
    }
    if (j.contains("checks")) plan.checks = j["checks"].get<std::vector<std::string>>();
    if (j.contains("dims")) plan.dims = to_dims(j["dims"].get<std::vector<long long>>());
    if (j.contains("trials")) plan.trials = j["trials"].get<std::int64_t>();
    if (j.contains("seed")) plan.seed = j["seed"].is_string() ? std::stoull(j["seed"].get<std::string>())
                                                              : j["seed"].get<std::uint64_t>();
    if (j.contains("v")) plan.overrides.v = j["v"].get<std::vector<double>>();
    if (j.contains("p")) plan.overrides.p = j["p"].get<std::vector<double>>();
    if (j.contains("norms")) plan.overrides.norms = parse_norms(j["norms"].get<std::vector<std::string>>());
    if (j.contains("means")) plan.overrides.means = parse_means(j["means"].get<std::vector<std::string>>());
    if (j.contains("tolAbs")) plan.tol.absTol = j["tolAbs"].get<double>();
    if (j.contains("tolRel")) plan.tol.relTol = j["tolRel"].get<double>();
    if (j.contains("threads")) plan.threads = j["threads"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigParse(std::string("plan file: ") + e.what());
  } catch (const std::logic_error& e) {
    throw ConfigParse(std::string("plan file: ") + e.what());
  }
}

int run_verify_command(const VerifyArgs& a, const CLI::App& cmd) {
  SuitePlan plan = SuitePlan::named(a.suite.empty() ? "standard" : a.suite);
  if (!a.planFile.empty()) apply_plan_file(plan, a.planFile);
  if (!a.suite.empty()) {
    const SuitePlan named = SuitePlan::named(a.suite);
    plan.suite = named.suite;
    plan.trials = named.trials;
  }
  if (cmd.count("--checks")) plan.checks = a.checks;
  if (cmd.count("--dims")) plan.dims = to_dims(a.dims);
  if (cmd.count("--trials")) plan.trials = a.trials;
  if (cmd.count("--seed")) plan.seed = a.seed;
  if (cmd.count("--v")) plan.overrides.v = parse_doubles(a.v);
  if (cmd.count("--p")) plan.overrides.p = parse_doubles(a.p);
  if (cmd.count("--norm")) plan.overrides.norms = parse_norms(a.norms);
  if (cmd.count("--mean")) plan.overrides.means = parse_means(a.means);
  if (cmd.count("--tol-abs")) plan.tol.absTol = a.tolAbs;
  if (cmd.count("--tol-rel")) plan.tol.relTol = a.tolRel;
  if (cmd.count("--threads")) plan.threads = a.threads;
  const ReportFormat fmt = parse_format(a.format);
  plan.validate();

  ReportDocument doc;
  doc.timestamp = utc_timestamp();
  doc.plan = plan_json(plan);
  doc.results = run_verify(plan);
  write_output(render(doc, fmt), a.out);
  print_summary(doc);
  return doc.any_fail() ? kExitFail : kExitOk;
}

// ---------------------------------------------------------------- constants

struct ConstantsArgs {
  std::string name;
  std::optional<double> h, v, m, M, s, t, m2, m1, M1, M2, p;
  std::string f;
  bool reciprocal = false;
};

double need(const std::optional<double>& x, const char* flag) {
  if (!x) throw ConfigParse(std::string("missing --") + flag);
  return *x;
}

int run_constants_command(const ConstantsArgs& a) {
  ojson params = ojson::object();
  ojson value;
  auto take = [&params](const std::optional<double>& x, const char* flag) {
    const double y = need(x, flag);
    params[flag] = y;
    return y;
  };
  if (a.name == "K") {
    const double h = take(a.h, "h");
    const double v = take(a.v, "v");
    value = kantorovich_K(h, v);
  } else if (a.name == "C") {
    const double m = take(a.m, "m");
    const double M = take(a.M, "M");
    const double v = take(a.v, "v");
    value = ratio_C(m, M, v);
  } else if (a.name == "xi-psi") {
    const double s = take(a.s, "s");
    const double t = take(a.t, "t");
    const double v = take(a.v, "v");
    const XiPsi xp = xi_psi(RatioBounds(s, t), v);
    value = {{"xi", xp.xi}, {"psi", xp.psi}};
  } else if (a.name == "L") {
    const double m = take(a.m, "m");
    const double M = take(a.M, "M");
    const double v = take(a.v, "v");
    value = L_constant(SandwichBounds(m, M), v);
  } else if (a.name == "gamma") {
    const double m2 = take(a.m2, "m2");
    const double m1 = take(a.m1, "m1");
    const double M1 = take(a.M1, "M1");
    const double M2 = take(a.M2, "M2");
    const double p = take(a.p, "p");
    const double v = take(a.v, "v");
    value = gamma_p(FourPointBounds(m2, m1, M1, M2), p, v);
  } else if (a.name == "K-mp") {
    if (a.f.empty()) throw ConfigParse("missing --f");
    const MonotoneFunction f = parse_monotone(a.f);
    params["f"] = f.to_string();
    if (a.reciprocal) params["reciprocal"] = true;
    const double m = take(a.m, "m");
    const double M = take(a.M, "M");
    ScalarFunction g = a.reciprocal ? ScalarFunction([f](double x) { return 1.0 / f(x); })
                                    : ScalarFunction([f](double x) { return f(x); });
    value = K_mond_pecaric(g, SandwichBounds(m, M));
  } else {
    throw ConfigParse("unknown constant '" + a.name + "' (K, C, xi-psi, L, gamma, K-mp)");
  }
  ojson out;
  out["name"] = a.name;
  out["params"] = std::move(params);
  out["value"] = std::move(value);
  std::cout << out.dump() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- limit

struct LimitArgs {
  std::vector<long long> dims{2, 3};
  std::int64_t trials = 20;
  std::uint64_t seed = 0;
  std::vector<std::string> v{"0.25", "0.5"};
  std::vector<std::string> means{"harmonic", "geometric", "power:r=0.5"};
  std::vector<std::string> norms{"schatten:inf"};
  std::vector<std::string> pList{"1", "0.5", "0.1", "0.05", "0.01", "0.005", "0.001"};
  double lo = -1.0, hi = 1.0;
  bool commuting = false;
  int threads = 1;
  std::string out = "-";
  std::string format = "json";
};

int run_limit_command(const LimitArgs& a) {
  const std::vector<double> vs = parse_doubles(a.v);
  const std::vector<double> ps = parse_doubles(a.pList);
  const std::vector<Index> dims = to_dims(a.dims);
  if (a.trials < 1) throw ConfigParse("trials must be >= 1");
  const ReportFormat fmt = parse_format(a.format);
  const std::vector<Cell> cells =
      limit_cells(vs, parse_norms(a.norms), parse_means(a.means), ps, a.lo, a.hi, a.commuting);

  ReportDocument doc;
  doc.timestamp = utc_timestamp();
  ojson plan;
  plan["suite"] = "limit";
  plan["dims"] = a.dims;
  plan["trials"] = a.trials;
  plan["seed"] = std::to_string(a.seed);
  plan["v"] = vs;
  plan["means"] = a.means;
  plan["norms"] = a.norms;
  plan["pList"] = ps;
  plan["spectrum"] = {a.lo, a.hi};
  plan["commuting"] = a.commuting;
  plan["prng"] = "splitmix64-counter";
  doc.plan = std::move(plan);
  doc.results = run_grids({cells}, dims, a.trials, a.seed, TolerancePolicy{}, a.threads);
  write_output(render(doc, fmt), a.out);
  print_summary(doc);
  return doc.any_fail() ? kExitFail : kExitOk;
}

// ---------------------------------------------------------------- scan

struct ScanArgs {
  std::string check;
  std::vector<long long> dims{1, 2, 3};
  std::int64_t trials = 20;
  std::uint64_t seed = 0;
  std::vector<std::string> v, p, norms, means;
  double tolAbs = 1e-9, tolRel = 1e-9;
  std::string out = "-";
};

int run_scan_command(const ScanArgs& a, const CLI::App& cmd) {
  GridOverrides grid;
  if (cmd.count("--v")) grid.v = parse_doubles(a.v);
  if (cmd.count("--p")) grid.p = parse_doubles(a.p);
  if (cmd.count("--norm")) grid.norms = parse_norms(a.norms);
  if (cmd.count("--mean")) grid.means = parse_means(a.means);
  const TolerancePolicy tol{a.tolAbs, a.tolRel};
  tol.validate();
  const std::vector<ScanRow> rows = tightness_scan(a.check, grid, to_dims(a.dims), a.trials, a.seed, tol);
  ojson doc;
  doc["toolVersion"] = kToolVersion;
  doc["checkId"] = a.check;
  doc["seed"] = std::to_string(a.seed);
  doc["dims"] = a.dims;
  doc["trialsPerCell"] = a.trials;
  ojson arr = ojson::array();
  bool violation = false;
  for (const ScanRow& r : rows) {
    arr.push_back(to_json(r));
    violation = violation || r.violation;
  }
  doc["rows"] = std::move(arr);
  doc["violation"] = violation;
  write_output(doc.dump(2) + "\n", a.out);
  return violation ? kExitFail : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of operator mean inequalities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "Run a seeded verification suite");
  verify->add_option("--suite", va.suite, "standard (500 trials) or quick (20 trials)");
  verify->add_option("--plan", va.planFile, "JSON plan file; flags override its values");
  verify->add_option("--checks", va.checks, "Check ids")->delimiter(',');
  verify->add_option("--dims", va.dims, "Matrix dimensions")->delimiter(',');
  verify->add_option("--trials", va.trials, "Trials per (check, dim)");
  verify->add_option("--seed", va.seed, "Master seed");
  verify->add_option("--v", va.v, "Weight grid override")->delimiter(',');
  verify->add_option("--p", va.p, "Exponent grid override")->delimiter(',');
  verify->add_option("--norm", va.norms, "Norm override, e.g. schatten:2, kyfan:3 (repeatable)");
  verify->add_option("--mean", va.means, "Mean override, e.g. power:r=0.5 (repeatable)");
  verify->add_option("--tol-abs", va.tolAbs, "Absolute tolerance (default 1e-9)");
  verify->add_option("--tol-rel", va.tolRel, "Relative tolerance (default 1e-9)");
  verify->add_option("--threads", va.threads, "Worker threads");
  verify->add_option("--out", va.out, "Output path, - for stdout");
  verify->add_option("--format", va.format, "json or csv");

  ConstantsArgs ca;
  CLI::App* constants = app.add_subcommand("constants", "Print a scalar constant as JSON");
  constants->set_help_flag("--help", "Print this help message and exit");
  constants->add_option("name", ca.name, "K, C, xi-psi, L, gamma, K-mp")->required();
  for (auto [flag, slot] : std::initializer_list<std::pair<const char*, std::optional<double>*>>{
           {"--h", &ca.h}, {"--v", &ca.v}, {"--m", &ca.m}, {"--M", &ca.M}, {"--s", &ca.s}, {"--t", &ca.t},
           {"--m2", &ca.m2}, {"--m1", &ca.m1}, {"--M1", &ca.M1}, {"--M2", &ca.M2}, {"--p", &ca.p}}) {
    constants->add_option_function<std::string>(flag, [slot](const std::string& s) { *slot = parse_double(s); });
  }
  constants->add_option("--f", ca.f, "Catalog function for K-mp, e.g. invpow:1");
  constants->add_flag("--reciprocal", ca.reciprocal, "K-mp of 1/f");

  LimitArgs la;
  CLI::App* limit = app.add_subcommand("limit", "Limit study of the normed Golden-Thompson limit as p -> 0");
  limit->add_option("--dims", la.dims, "Matrix dimensions")->delimiter(',');
  limit->add_option("--trials", la.trials, "Trials per dim");
  limit->add_option("--seed", la.seed, "Master seed");
  limit->add_option("--v", la.v, "Weights")->delimiter(',');
  limit->add_option("--mean", la.means, "Means (repeatable)");
  limit->add_option("--norm", la.norms, "Norms (repeatable)");
  limit->add_option("--p-list", la.pList, "Strictly descending exponents")->delimiter(',');
  limit->add_option("--lo", la.lo, "Lower spectrum bound");
  limit->add_option("--hi", la.hi, "Upper spectrum bound");
  limit->add_flag("--commuting", la.commuting, "Sample commuting pairs");
  limit->add_option("--threads", la.threads, "Worker threads");
  limit->add_option("--out", la.out, "Output path, - for stdout");
  limit->add_option("--format", la.format, "json or csv");

  ScanArgs sa;
  CLI::App* scan = app.add_subcommand("scan", "Tightness scan of a norm-valued check");
  scan->add_option("--check", sa.check, "Check id")->required();
  scan->add_option("--dims", sa.dims, "Matrix dimensions")->delimiter(',');
  scan->add_option("--trials", sa.trials, "Trials per cell and dim");
  scan->add_option("--seed", sa.seed, "Master seed");
  scan->add_option("--v", sa.v, "Weight grid")->delimiter(',');
  scan->add_option("--p", sa.p, "Exponent grid")->delimiter(',');
  scan->add_option("--norm", sa.norms, "Norms (repeatable)");
  scan->add_option("--mean", sa.means, "Means (repeatable)");
  scan->add_option("--tol-abs", sa.tolAbs, "Absolute tolerance");
  scan->add_option("--tol-rel", sa.tolRel, "Relative tolerance");
  scan->add_option("--out", sa.out, "Output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) return run_verify_command(va, *verify);
    if (*constants) return run_constants_command(ca);
    if (*limit) return run_limit_command(la);
    if (*scan) return run_scan_command(sa, *scan);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
