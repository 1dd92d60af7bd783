#pragma once

// Suite runner: expands each check into a grid of parameter cells, samples
// matrices per (check, dim, trial) and collects CheckResults in a fixed order.
//
// Trial k of dimension index d uses cell (d * trials + k) mod #cells, so the
// whole grid is swept across the dims of a run. The sample stream of a trial
// is keyed by (master(seed, checkId, dim), k) and nothing else.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "opineq/inequalities.hpp"
#include "opineq/sampling.hpp"

namespace opineq {

/// One point of a check's parameter grid. Only the fields the check reads are set.
struct Cell {
  std::string checkId;
  double v = 0.5;
  double p = 1.0;
  std::optional<NormDescriptor> norm;
  std::optional<MeanDescriptor> sigma;
  std::optional<MeanDescriptor> tau;
  std::optional<MonotoneFunction> f;     // the f of single-function checks; fInc for prop37
  std::optional<MonotoneFunction> fDec;  // prop37 only
  std::string map;
  std::optional<SandwichBounds> sb;
  std::optional<RatioBounds> rb;
  std::optional<FourPointBounds> fp;
  double lo = 0.0;  // Hermitian spectrum, or the spectrum of A for ratio pairs
  double hi = 0.0;
  std::vector<double> pList;
  bool commuting = false;  // limit fixtures: A and B share an eigenbasis
};

/// Optional replacements for the default grids (CLI --v, --p, --norm, --mean).
struct GridOverrides {
  std::optional<std::vector<double>> v;
  std::optional<std::vector<double>> p;
  std::optional<std::vector<NormDescriptor>> norms;
  std::optional<std::vector<MeanDescriptor>> means;
};

namespace grids {

inline std::vector<double> v_unit() { return {0.0, 0.25, 0.5, 0.75, 1.0}; }
inline std::vector<double> v_above_one() { return {1.25, 1.5, 2.0, 3.0}; }
inline std::vector<double> p_above_one() { return {1.5, 2.0, 3.0}; }
inline std::vector<double> p_positive() { return {0.5, 1.0, 2.0}; }
inline std::vector<double> limit_p_list() { return {1.0, 0.5, 0.1, 0.05, 0.01, 0.005, 0.001}; }

inline std::vector<NormDescriptor> norms() {
  return {NormDescriptor::operator_norm(), NormDescriptor::schatten(1.0), NormDescriptor::schatten(2.0),
          NormDescriptor::kyfan(2)};
}

// The reverse inequalities with a single power of the constant only hold in the operator norm.
inline std::vector<NormDescriptor> operator_norm_only() { return {NormDescriptor::operator_norm()}; }

inline std::vector<MeanDescriptor> means() {
  return {MeanDescriptor::arithmetic(0.5), MeanDescriptor::geometric(0.5), MeanDescriptor::harmonic(0.5),
          MeanDescriptor::power(0.5, 0.5), MeanDescriptor::power(-0.5, 0.5)};
}

inline std::vector<MonotoneFunction> f_increasing() {
  return {MonotoneFunction::pow(0.5), MonotoneFunction::moebius(1.0), MonotoneFunction::log1p()};
}

inline std::vector<MonotoneFunction> f_decreasing() {
  return {MonotoneFunction::invpow(1.0), MonotoneFunction::invpow(0.5), MonotoneFunction::resolvent(1.0)};
}

inline std::vector<MonotoneFunction> f_all() {
  auto out = f_increasing();
  for (auto f : f_decreasing()) out.push_back(f);
  return out;
}

inline std::vector<SandwichBounds> sandwich() { return {SandwichBounds(0.5, 2.0), SandwichBounds(1.0, 4.0)}; }
inline std::vector<RatioBounds> ratio() { return {RatioBounds(0.5, 2.0), RatioBounds(0.25, 4.0)}; }
inline std::vector<FourPointBounds> four_point() {
  return {FourPointBounds(0.5, 1.0, 2.0, 4.0), FourPointBounds(1.0, 1.2, 1.5, 2.0)};
}
inline std::vector<std::pair<double, double>> exp_spectra() { return {{-1.0, 1.0}, {0.0, 2.0}}; }
inline std::vector<std::string> maps() { return {"identity", "pinch", "compress:2", "umix:3"}; }

inline constexpr double kRatioSpecLo = 0.5;
inline constexpr double kRatioSpecHi = 2.0;

}  // namespace grids

/// Default parameter grid of a check, with user overrides applied.
inline std::vector<Cell> default_cells(const std::string& checkId, const GridOverrides& ov = {}) {
  if (!is_check_id(checkId)) throw UnknownCheckId("unknown check id '" + checkId + "'");
  const bool vAboveOne = checkId == "lemma21" || checkId == "cor22" || checkId == "thm23-ah" || checkId == "thm23-gt";
  const std::vector<double> vs = ov.v.value_or(vAboveOne ? grids::v_above_one() : grids::v_unit());
  const bool pAboveOne = checkId == "ah-classic" || checkId == "thm23-ah" || checkId == "thm34";
  const std::vector<double> ps = ov.p.value_or(pAboveOne ? grids::p_above_one() : grids::p_positive());
  const bool operatorOnly = checkId == "ah-classic" || checkId == "thm34";
  const std::vector<NormDescriptor> norms = ov.norms.value_or(operatorOnly ? grids::operator_norm_only() : grids::norms());
  const std::vector<MeanDescriptor> means = ov.means.value_or(grids::means());

  std::vector<Cell> out;
  auto base = [&checkId] {
    Cell c;
    c.checkId = checkId;
    return c;
  };

  if (checkId == "gt-trace") {
    Cell c = base();
    c.lo = -2.0;
    c.hi = 2.0;
    out.push_back(c);
  } else if (checkId == "gt-classic") {
    for (double v : vs)
      for (double p : ps)
        for (const auto& n : norms) {
          Cell c = base();
          c.v = v, c.p = p, c.norm = n, c.lo = -1.0, c.hi = 1.0;
          out.push_back(c);
        }
  } else if (checkId == "ah-classic") {
    for (double v : vs)
      for (double p : ps)
        for (const auto& n : norms)
          for (const auto& sb : grids::sandwich()) {
            Cell c = base();
            c.v = v, c.p = p, c.norm = n, c.sb = sb;
            out.push_back(c);
          }
  } else if (checkId == "lemma21") {
    for (double v : vs)
      for (const auto& fp : grids::four_point()) {
        Cell c = base();
        c.v = v, c.fp = fp;
        out.push_back(c);
      }
  } else if (checkId == "cor22") {
    for (double v : vs)
      for (const auto& fp : grids::four_point())
        for (const auto& f : grids::f_increasing()) {
          Cell c = base();
          c.v = v, c.fp = fp, c.f = f;
          out.push_back(c);
        }
  } else if (checkId == "thm23-ah" || checkId == "thm23-gt") {
    for (double v : vs)
      for (double p : ps)
        for (const auto& n : norms)
          for (const auto& fp : grids::four_point()) {
            Cell c = base();
            c.v = v, c.p = p, c.norm = n, c.fp = fp;
            out.push_back(c);
          }
  } else if (checkId == "ineq6") {
    for (double v : vs)
      for (const auto& rb : grids::ratio()) {
        Cell c = base();
        c.v = v, c.rb = rb, c.lo = grids::kRatioSpecLo, c.hi = grids::kRatioSpecHi;
        out.push_back(c);
      }
  } else if (checkId == "lemma31") {
    for (double v : vs)
      for (const auto& f : grids::f_all())
        for (const auto& sb : grids::sandwich()) {
          Cell c = base();
          c.v = v, c.f = f, c.sb = sb;
          out.push_back(c);
        }
  } else if (checkId == "lemma32") {
    for (double v : vs)
      for (const auto& rb : grids::ratio())
        for (const auto& f : grids::f_all())
          for (const auto& s : means)
            for (const auto& t : means) {
              Cell c = base();
              c.v = v, c.rb = rb, c.f = f, c.sigma = s, c.tau = t;
              c.lo = grids::kRatioSpecLo, c.hi = grids::kRatioSpecHi;
              out.push_back(c);
            }
  } else if (checkId == "cor33") {
    for (double v : vs)
      for (const auto& sb : grids::sandwich())
        for (const auto& f : grids::f_increasing())
          for (const auto& s : means)
            for (const auto& t : means) {
              Cell c = base();
              c.v = v, c.sb = sb, c.f = f, c.sigma = s, c.tau = t;
              out.push_back(c);
            }
  } else if (checkId == "thm34") {
    for (double v : vs)
      for (double p : ps)
        for (const auto& n : norms)
          for (const auto& sb : grids::sandwich())
            for (const auto& s : means)
              for (const auto& t : means) {
                Cell c = base();
                c.v = v, c.p = p, c.norm = n, c.sb = sb, c.sigma = s, c.tau = t;
                out.push_back(c);
              }
  } else if (checkId == "cor35") {
    for (double v : vs)
      for (double p : ps)
        for (const auto& n : norms)
          for (const auto& s : means)
            for (const auto& [lo, hi] : grids::exp_spectra()) {
              Cell c = base();
              c.v = v, c.p = p, c.norm = n, c.sigma = s, c.lo = lo, c.hi = hi;
              out.push_back(c);
            }
  } else if (checkId == "limit36") {
    for (double v : vs)
      for (const auto& n : norms)
        for (const auto& s : means) {
          Cell c = base();
          c.v = v, c.norm = n, c.sigma = s, c.lo = -1.0, c.hi = 1.0, c.pList = grids::limit_p_list();
          out.push_back(c);
        }
  } else if (checkId == "polya-e") {
    for (double v : vs)
      for (const auto& sb : grids::sandwich())
        for (const auto& f : grids::f_increasing())
          for (const auto& s : means)
            for (const auto& t : means)
              for (const auto& m : grids::maps()) {
                Cell c = base();
                c.v = v, c.sb = sb, c.f = f, c.sigma = s, c.tau = t, c.map = m;
                out.push_back(c);
              }
  } else if (checkId == "prop37") {
    for (double v : vs)
      for (const auto& sb : grids::sandwich())
        for (const auto& fd : grids::f_decreasing())
          for (const auto& fi : grids::f_increasing())
            for (const auto& s : means)
              for (const auto& t : means)
                for (const auto& m : grids::maps()) {
                  Cell c = base();
                  c.v = v, c.sb = sb, c.fDec = fd, c.f = fi, c.sigma = s, c.tau = t, c.map = m;
                  out.push_back(c);
                }
  }
  return out;
}

/// A and B with spectra in [lo, hi] sharing one Haar eigenbasis.
inline std::pair<HermitianMatrix, HermitianMatrix> commuting_pair(Index n, double lo, double hi, Rng& rng) {
  RVector da(n), db(n);
  for (Index i = 0; i < n; ++i) da(i) = rng.uniform(lo, hi);
  for (Index i = 0; i < n; ++i) db(i) = rng.uniform(lo, hi);
  const CMatrix u = haar_unitary(n, rng);
  return {HermitianMatrix::symmetrized(u * da.asDiagonal() * u.adjoint()),
          HermitianMatrix::symmetrized(u * db.asDiagonal() * u.adjoint())};
}

/// Draws the operands a cell's check needs, from the stream of `seed`.
inline std::pair<HermitianMatrix, HermitianMatrix> sample_for(const Cell& c, Index n, Rng& rng, bool forceEndpoints) {
  const std::string& id = c.checkId;
  if (id == "gt-trace" || id == "gt-classic" || id == "cor35" || id == "limit36") {
    if (c.commuting) return commuting_pair(n, c.lo, c.hi, rng);
    return bounded_pair(n, c.lo, c.hi, rng, forceEndpoints);
  }
  if (id == "lemma21" || id == "cor22" || id == "thm23-ah" || id == "thm23-gt")
    return sandwich_pair(n, *c.fp, rng, forceEndpoints);
  if (id == "ineq6" || id == "lemma32") return ratio_pair(n, *c.rb, c.lo, c.hi, rng, forceEndpoints);
  return bounded_pair(n, c.sb->m, c.sb->M, rng, forceEndpoints);
}

/// Runs one trial of a cell on the given operands.
inline std::vector<CheckResult> evaluate_cell(const Cell& c, const HermitianMatrix& a, const HermitianMatrix& b,
                                              Rng& rng, const TolerancePolicy& tol) {
  const std::string& id = c.checkId;
  auto one = [](CheckResult r) { return std::vector<CheckResult>{std::move(r)}; };
  if (id == "gt-trace") return one(check_gt_trace(a, b, tol));
  if (id == "gt-classic") return one(check_gt_classic(a, b, c.v, c.p, *c.norm, tol));
  if (id == "ah-classic") return check_andohiai_classic(a, b, *c.sb, c.v, c.p, *c.norm, tol);
  if (id == "lemma21") return check_lemma21(a, b, *c.fp, c.v, tol);
  if (id == "cor22") return one(check_cor22(a, b, *c.fp, c.v, *c.f, tol));
  if (id == "thm23-ah") return one(check_thm23_ah(a, b, *c.fp, c.v, c.p, *c.norm, tol));
  if (id == "thm23-gt") return one(check_thm23_gt(a, b, *c.fp, c.v, c.p, *c.norm, tol));
  if (id == "ineq6") return check_ineq6(a, b, *c.rb, c.v, tol);
  if (id == "lemma31") return one(check_lemma31(a, b, c.v, *c.f, tol));
  if (id == "lemma32") return check_lemma32(a, b, *c.rb, c.v, *c.f, *c.sigma, *c.tau, tol);
  if (id == "cor33") return check_cor33(a, b, *c.sb, c.v, *c.f, *c.sigma, *c.tau, tol);
  if (id == "thm34") return check_thm34(a, b, *c.sb, c.v, c.p, *c.sigma, *c.tau, *c.norm, tol);
  if (id == "cor35") return check_cor35(a, b, c.lo, c.hi, c.v, c.p, *c.sigma, *c.norm, tol);
  if (id == "limit36") return one(check_limit(a, b, c.v, *c.sigma, *c.norm, c.pList, tol));

  // Map-based checks: the map is drawn after the operands from the same stream.
  const Params mapParams{{"dim", static_cast<std::int64_t>(a.dim())}, {"map", c.map}};
  std::optional<PositiveLinearMap> phi;
  try {
    phi = make_map(c.map, a.dim(), rng);
  } catch (const KExceedsDim& e) {
    if (id == "prop37") {
      Params p1 = mapParams, p2 = mapParams;
      p1["part"] = std::string("eee");
      p2["part"] = std::string("eq3");
      return {not_applicable(id, p1, e), not_applicable(id, p2, e)};
    }
    return one(not_applicable(id, mapParams, e));
  }
  if (id == "polya-e") return one(check_polya(a, b, *c.sb, c.v, *c.f, *c.sigma, *c.tau, *phi, tol));
  if (id == "prop37") return check_prop37(a, b, *c.sb, c.v, *c.fDec, *c.f, *c.sigma, *c.tau, *phi, tol);
  throw UnknownCheckId("unknown check id '" + id + "'");
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Master key of the sample streams of (check, dim) under a run seed.
inline std::uint64_t cell_master(std::uint64_t seed, std::string_view checkId, Index dim) {
  return Rng::mix64(seed ^ Rng::mix64(fnv1a(checkId) + static_cast<std::uint64_t>(dim)));
}

/// One trial: sample, evaluate, stamp dim/seed/trial. Unexpected library
/// errors become Fail results carrying the message.
inline std::vector<CheckResult> run_trial(const Cell& c, Index dim, std::uint64_t seed, std::uint64_t trial,
                                          const TolerancePolicy& tol, bool forceEndpoints = false) {
  Rng rng(SamplerSeed{cell_master(seed, c.checkId, dim), trial});
  std::vector<CheckResult> out;
  try {
    auto [a, b] = sample_for(c, dim, rng, forceEndpoints);
    out = evaluate_cell(c, a, b, rng, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UnknownCheckId || e.code() == ErrorCode::ConfigParse) throw;
    CheckResult r;
    r.checkId = c.checkId;
    r.status = Status::Fail;
    r.holds = false;
    r.witness = e.witness();
    r.notes = std::string("error: ") + e.what();
    out.push_back(std::move(r));
  }
  for (CheckResult& r : out) {
    r.params["dim"] = static_cast<std::int64_t>(dim);
    r.params["seed"] = std::to_string(seed);
    r.params["trial"] = static_cast<std::int64_t>(trial);
  }
  return out;
}

struct SuitePlan {
  std::string suite = "standard";
  std::vector<std::string> checks;
  std::vector<Index> dims;
  std::int64_t trials = 500;
  std::uint64_t seed = 0;
  GridOverrides overrides;
  TolerancePolicy tol;
  int threads = 1;

  static SuitePlan named(const std::string& name) {
    SuitePlan p;
    p.suite = name;
    p.checks.assign(kCheckIds.begin(), kCheckIds.end());
    p.dims = {1, 2, 3, 5, 8};
    if (name == "standard") p.trials = 500;
    else if (name == "quick") p.trials = 20;
    else throw ConfigParse("unknown suite '" + name + "' (standard, quick)");
    return p;
  }

  void validate() const {
    if (checks.empty()) throw ConfigParse("plan needs at least one check");
    for (const auto& c : checks)
      if (!is_check_id(c)) throw UnknownCheckId("unknown check id '" + c + "'");
    if (dims.empty()) throw ConfigParse("plan needs at least one dim");
    for (Index d : dims)
      if (d < 1) throw ConfigParse("dims must be >= 1");
    if (trials < 1) throw ConfigParse("trials must be >= 1");
    if (threads < 1) throw ConfigParse("threads must be >= 1");
    auto nonempty = [](const auto& o, const char* what) {
      if (o && o->empty()) throw ConfigParse(std::string(what) + " list is empty");
    };
    nonempty(overrides.v, "v");
    nonempty(overrides.p, "p");
    nonempty(overrides.norms, "norm");
    nonempty(overrides.means, "mean");
    tol.validate();
  }
};

/// Runs `count` indexed jobs on up to `threads` workers. Jobs write to their own slots.
template <class Job>
void parallel_for(std::size_t count, int threads, Job&& job) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count && !failed; i = next++) {
        try {
          job(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

/// Runs every grid for every dim and trial; results ordered by (grid, dim, trial, part).
inline std::vector<CheckResult> run_grids(const std::vector<std::vector<Cell>>& cells, const std::vector<Index>& dims,
                                          std::int64_t trials, std::uint64_t seed, const TolerancePolicy& tol,
                                          int threads) {
  struct Job {
    const Cell* cell;
    Index dim;
    std::uint64_t trial;
  };
  std::vector<Job> jobs;
  for (const auto& grid : cells) {
    if (grid.empty()) continue;
    for (std::size_t d = 0; d < dims.size(); ++d)
      for (std::int64_t k = 0; k < trials; ++k) {
        const std::size_t idx = (d * static_cast<std::size_t>(trials) + static_cast<std::size_t>(k)) % grid.size();
        jobs.push_back({&grid[idx], dims[d], static_cast<std::uint64_t>(k)});
      }
  }
  std::vector<std::vector<CheckResult>> slots(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t i) {
    slots[i] = run_trial(*jobs[i].cell, jobs[i].dim, seed, jobs[i].trial, tol);
  });
  std::vector<CheckResult> out;
  for (auto& s : slots)
    for (auto& r : s) out.push_back(std::move(r));
  return out;
}

/// All results of a plan, ordered by (check in plan order, dim in plan order, trial, part).
inline std::vector<CheckResult> run_verify(const SuitePlan& plan) {
  plan.validate();
  std::vector<std::vector<Cell>> cells;
  for (const auto& id : plan.checks) cells.push_back(default_cells(id, plan.overrides));
  return run_grids(cells, plan.dims, plan.trials, plan.seed, plan.tol, plan.threads);
}

/// Limit-study grid: one limit36 cell per (v, norm, mean).
inline std::vector<Cell> limit_cells(const std::vector<double>& vs, const std::vector<NormDescriptor>& norms,
                                     const std::vector<MeanDescriptor>& means, const std::vector<double>& pList,
                                     double lo, double hi, bool commuting) {
  if (pList.empty()) throw ConfigParse("p list is empty");
  for (std::size_t i = 0; i + 1 < pList.size(); ++i)
    if (!(pList[i] > pList[i + 1])) throw ConfigParse("p list must be strictly descending");
  if (!(pList.back() >= kLimitMinP)) throw ConfigParse("smallest p must be >= 1e-4");
  if (!(lo <= hi)) throw ConfigParse("spectrum needs lo <= hi");
  std::vector<Cell> out;
  for (double v : vs)
    for (const auto& n : norms)
      for (const auto& m : means) {
        Cell c;
        c.checkId = "limit36";
        c.v = v, c.norm = n, c.sigma = m, c.pList = pList, c.lo = lo, c.hi = hi, c.commuting = commuting;
        out.push_back(c);
      }
  return out;
}

// ---------------------------------------------------------------------------
// Tightness scan

inline bool is_norm_valued(std::string_view id) {
  return id == "gt-trace" || id == "gt-classic" || id == "ah-classic" || id == "thm23-ah" || id == "thm23-gt" ||
         id == "thm34" || id == "cor35";
}

struct ScanRow {
  Params params;  // cell parameters, including part for multi-part checks
  std::int64_t evaluated = 0;
  std::int64_t notApplicable = 0;
  std::optional<double> maxRatio;
  std::int64_t argmaxDim = 0;
  std::int64_t argmaxTrial = 0;
  std::string argmaxDigest;
  bool violation = false;
};

/// FNV-1a over the raw entries of both operands, as 16 hex digits.
inline std::string instance_digest(const HermitianMatrix& a, const HermitianMatrix& b) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const CMatrix& m) {
    const auto* bytes = reinterpret_cast<const unsigned char*>(m.data());
    for (std::size_t i = 0; i < static_cast<std::size_t>(m.size()) * sizeof(Complex); ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  feed(a.matrix());
  feed(b.matrix());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Max observed lhs/rhs per (cell, part) with endpoint-forced spectra.
/// A cell whose max exceeds 1 + relTol, or that produced a Fail, is flagged.
inline std::vector<ScanRow> tightness_scan(const std::string& checkId, const GridOverrides& grid,
                                           const std::vector<Index>& dims, std::int64_t trialsPerCell,
                                           std::uint64_t seed, const TolerancePolicy& tol = {}) {
  if (!is_check_id(checkId) || !is_norm_valued(checkId))
    throw UnknownCheckId("'" + checkId + "' is not a norm-valued check id");
  if (trialsPerCell < 1) throw ConfigParse("trials must be >= 1");
  const std::vector<Cell> cells = default_cells(checkId, grid);
  std::vector<ScanRow> rows;
  std::map<std::pair<std::size_t, std::string>, std::size_t> index;
  for (std::size_t ci = 0; ci < cells.size(); ++ci)
    for (Index dim : dims)
      for (std::int64_t k = 0; k < trialsPerCell; ++k) {
        // Distinct stream per cell: trial index offset by the cell number.
        const std::uint64_t trial = static_cast<std::uint64_t>(ci) * static_cast<std::uint64_t>(trialsPerCell) +
                                    static_cast<std::uint64_t>(k);
        Rng rng(SamplerSeed{cell_master(seed, checkId, dim), trial});
        auto [a, b] = sample_for(cells[ci], dim, rng, true);
        std::vector<CheckResult> results;
        try {
          results = evaluate_cell(cells[ci], a, b, rng, tol);
        } catch (const Error& e) {
          CheckResult r;
          r.checkId = checkId;
          r.status = Status::Fail;
          r.notes = e.what();
          results.push_back(std::move(r));
        }
        for (CheckResult& r : results) {
          Params key = r.params;
          for (const char* drop : {"dim", "outDim"}) key.erase(drop);
          const std::string part = key.count("part") ? std::get<std::string>(key["part"]) : "";
          auto [it, fresh] = index.try_emplace({ci, part}, rows.size());
          if (fresh) {
            ScanRow row;
            row.params = key;
            rows.push_back(std::move(row));
          }
          ScanRow& row = rows[it->second];
          ++row.evaluated;
          if (r.status == Status::NotApplicable) {
            ++row.notApplicable;
            continue;
          }
          if (r.status == Status::Fail) row.violation = true;
          if (r.ratio && (!row.maxRatio || *r.ratio > *row.maxRatio)) {
            row.maxRatio = r.ratio;
            row.argmaxDim = static_cast<std::int64_t>(dim);
            row.argmaxTrial = static_cast<std::int64_t>(trial);
            row.argmaxDigest = instance_digest(a, b);
          }
        }
      }
  for (ScanRow& row : rows)
    if (row.maxRatio && *row.maxRatio > 1.0 + tol.relTol) row.violation = true;
  return rows;
}

}  // namespace opineq
