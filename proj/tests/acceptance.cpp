// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <cmath>
#include <cstdio>
#include <functional>
#include <regex>
#include <sstream>
#include <string>

#include "oracle_draws.hpp"
#include "test_util.hpp"

using namespace opineq;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

int failures = 0;

void report(int n, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail << "exception: " << e.what();
  }
  if (!o.ok) ++failures;
  std::printf("%s criterion %d: %s [%s]\n", o.ok ? "PASS" : "FAIL", n, title.c_str(), o.detail.str().c_str());
  std::fflush(stdout);
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

std::vector<CheckResult> standardResults;

// ---- 1

void standard_suite(Outcome& o) {
  SuitePlan plan = SuitePlan::named("standard");
  plan.seed = 1;
  standardResults = run_verify(plan);
  std::int64_t pass = 0, fail = 0, na = 0, naNoWitness = 0;
  std::string firstFail;
  for (const auto& r : standardResults) {
    if (r.status == Status::Pass) ++pass;
    if (r.status == Status::Fail) {
      ++fail;
      if (firstFail.empty()) firstFail = r.checkId + " " + r.notes;
    }
    if (r.status == Status::NotApplicable) {
      ++na;
      if (!r.witness) ++naNoWitness;
    }
  }
  o.require(fail == 0, "Fail in " + firstFail);
  o.require(naNoWitness == 0, "NotApplicable without witness");
  o.detail << pass << " pass, " << fail << " fail, " << na << " not applicable";
}

// ---- 2

void scalar_oracle(Outcome& o) {
  int compared = 0, na = 0, mismatches = 0;
  double worst = 0.0;
  for (auto id : kCheckIds) {
    const oracle_draws::Stats st = oracle_draws::run(std::string(id), 100, 20240601);
    compared += st.compared;
    na += st.notApplicable;
    mismatches += st.mismatches;
    worst = std::max(worst, st.maxRelErr);
    o.require(st.mismatches == 0, std::string(id) + ": " + st.worst);
    o.require(st.compared > 0, std::string(id) + ": nothing compared");
  }
  o.detail << compared << " sides compared, " << na << " agreed not applicable, " << mismatches
           << " mismatches, max rel err " << num(worst);
}

// ---- 3

void constants(Outcome& o) {
  double worst = 0.0;
  auto rel = [&](double got, double want, double bound, const std::string& what) {
    const double e = std::abs(got - want) / std::max(std::abs(want), 1e-300);
    worst = std::max(worst, e);
    o.require(e <= bound, what + " rel err " + num(e));
  };
  for (double h : {1.1, 2.0, 5.0, 10.0}) {
    rel(kantorovich_K(h, 2.0), (h + 1) * (h + 1) / (4 * h), 1e-12, "K(h,2)");
    for (double v : {1e-6, 1 - 1e-6, 1 + 1e-6, -1e-6}) {
      const double k = kantorovich_K(h, v);
      o.require(std::abs(k - 1.0) <= 1e-5, "K near endpoint " + num(v));
      rel(k, oracle::K(h, v), 1e-6, "K vs defining formula near endpoint");
    }
    for (double v : {0.25, 0.5, 0.75, 1.5, 3.0}) rel(kantorovich_K(h, v), oracle::K(h, v), 1e-12, "K(h,v)");
  }
  for (auto [m, M] : {std::pair{1.0, 4.0}, std::pair{0.5, 2.0}, std::pair{0.1, 10.0}}) {
    rel(L_constant(SandwichBounds(m, M), 0.5), (m + M) * (m + M) / (4 * m * M), 1e-13, "L(m,M,1/2)");
    for (double v : {0.1, 0.3, 0.8}) rel(L_constant(SandwichBounds(m, M), v), oracle::L(m, M, v), 1e-13, "L(m,M,v)");
  }
  for (double v : {0.0, 1.0}) {
    const XiPsi xp = xi_psi(RatioBounds(0.25, 4), v);
    o.require(std::abs(xp.xi - 1) <= 1e-15 && std::abs(xp.psi - 1) <= 1e-15, "xi = psi = 1 at v = " + num(v));
  }
  const XiPsi q = xi_psi(RatioBounds(0.25, 4), 0.5);
  rel(q.xi, 1.25, 1e-15, "xi(1/4,4,1/2)");
  rel(q.psi, 1.25, 1e-15, "psi(1/4,4,1/2)");
  rel(ratio_C(1, 4, 2), 16.0 / 7.0, 1e-15, "C(1,4,2)");
  const double kmp = K_mond_pecaric([](double t) { return 1.0 / t; }, SandwichBounds(1, 4));
  o.require(std::abs(kmp - 25.0 / 16.0) <= 1e-10, "K_mp(1/t,1,4) = " + num(kmp));
  o.detail << "max rel err " << num(worst) << ", K_mp(1/t,1,4) - 25/16 = " << num(kmp - 25.0 / 16.0);
}

// ---- 4

void limit(Outcome& o) {
  const std::vector<double> ps = grids::limit_p_list();
  const std::vector<MeanDescriptor> sigmas{MeanDescriptor::harmonic(0.5), MeanDescriptor::geometric(0.5),
                                           MeanDescriptor::power(0.5, 0.5)};
  const std::vector<NormDescriptor> norms{NormDescriptor::operator_norm(), NormDescriptor::schatten(1),
                                          NormDescriptor::schatten(2)};
  int series = 0;
  double worstRise = 0.0, worstFinal = 0.0, worstFixture = 0.0;
  for (Index n : {2, 3})
    for (std::uint64_t k = 0; k < 20; ++k) {
      Rng rng({777, static_cast<std::uint64_t>(n) * 1000 + k});
      const auto [a, b] = bounded_pair(n, -1, 1, rng);
      const auto [ca, cb] = commuting_pair(n, -1, 1, rng);
      for (double v : {0.25, 0.5})
        for (const auto& sig : sigmas)
          for (const auto& nm : norms) {
            const MeanDescriptor s = sig.with_weight(v);
            const LimitSeries ls = limit_errors(a, b, s, nm, ps);
            ++series;
            for (std::size_t i = 0; i + 1 < ls.errors.size(); ++i) {
              const double rise = ls.errors[i + 1] - ls.errors[i];
              worstRise = std::max(worstRise, rise);
              o.require(rise <= kLimitJitter, "err increases by " + num(rise) + " for " + s.to_string());
            }
            const double final = ls.errors.back() / ls.target;
            worstFinal = std::max(worstFinal, final);
            o.require(final <= kLimitRelThreshold, "err(0.001)/target = " + num(final));

            for (const double e : limit_errors(a, a, s, nm, ps).errors) worstFixture = std::max(worstFixture, e);
            if (sig.kind == MeanKind::Geometric)
              for (const double e : limit_errors(ca, cb, s, nm, ps).errors) worstFixture = std::max(worstFixture, e);
          }
    }
  o.require(worstFixture <= 1e-10, "fixture err " + num(worstFixture));
  const double lp = std::pow(L_constant_exp(0.5, 2.0, 1e-3, 0.3), 1.0 / 1e-3);
  o.require(std::abs(lp - 1.0) <= 1e-3, "L^(1/p) at p = 1e-3 is " + num(lp));
  o.detail << series << " series, max rise " << num(worstRise) << ", max err(0.001)/target " << num(worstFinal)
           << ", max fixture err " << num(worstFixture) << ", L^(1/p) - 1 = " << num(lp - 1);
}

// ---- 5

void mean_axioms(Outcome& o) {
  using testutil::frob;
  using testutil::frob_diff;
  double worst = 0.0;
  auto close = [&](const HermitianMatrix& x, const HermitianMatrix& y, double tol, const std::string& what) {
    const double e = frob_diff(x, y) / std::max(1.0, frob(y));
    worst = std::max(worst, e / tol);
    o.require(e <= tol, what + " " + num(e));
  };
  auto below = [&](const HermitianMatrix& x, const HermitianMatrix& y, const std::string& what) {
    const LoewnerResult r = loewner_compare(x, y, TolerancePolicy{1e-9, 1e-9});
    o.require(r.holds, what + " margin " + num(r.margin));
  };
  for (std::uint64_t k = 0; k < 200; ++k) {
    Rng rng({555, k});
    const Index n = 1 + static_cast<Index>(k % 5);
    const HermitianMatrix a = testutil::random_pd(n, rng);
    const HermitianMatrix b = testutil::random_pd(n, rng);
    const HermitianMatrix d = hermitian_with_spectrum(n, 0.0, 0.5, false, rng);
    const double v = rng.uniform();
    const double c = rng.uniform(0.2, 5.0);
    const CMatrix t = testutil::random_complex(n, rng) + 3.0 * CMatrix::Identity(n, n);
    for (const auto& m : testutil::catalog_means(v)) {
      const std::string tag = m.to_string();
      const HermitianMatrix ab = evaluate_mean(a, b, m);
      close(evaluate_mean(a, a, m), a, 1e-12, "idempotent " + tag);
      close(evaluate_mean(c * a, c * b, m), c * ab, 1e-12, "homogeneous " + tag);
      const HermitianMatrix tt = evaluate_mean(a.congruence(t), b.congruence(t), m);
      close(tt, ab.congruence(t), 1e-10, "transformer " + tag);
      below(ab, evaluate_mean(a + d, b + d, m), "monotone " + tag);
      below(evaluate_mean(a, b, MeanDescriptor::harmonic(v)), ab, "above harmonic " + tag);
      below(ab, evaluate_mean(a, b, MeanDescriptor::arithmetic(v)), "below arithmetic " + tag);
      close(evaluate_mean(a, b, m.with_weight(0.0)), a, 1e-12, "v = 0 " + tag);
      close(evaluate_mean(a, b, m.with_weight(1.0)), b, 1e-12, "v = 1 " + tag);
    }
  }
  o.detail << "200 trials x 7 means; worst error / tolerance " << num(worst);
}

// ---- 6

void norm_axioms(Outcome& o) {
  double worstInv = 0.0;
  for (std::uint64_t k = 0; k < 200; ++k) {
    Rng rng({666, k});
    const Index n = 1 + static_cast<Index>(k % 6);
    const HermitianMatrix x = HermitianMatrix::symmetrized(testutil::random_complex(n, rng));
    const HermitianMatrix y = HermitianMatrix::symmetrized(testutil::random_complex(n, rng));
    const HermitianMatrix z = x.congruence(haar_unitary(n, rng));
    const double c = rng.uniform(-3, 3);
    std::vector<NormDescriptor> ns{NormDescriptor::operator_norm(), NormDescriptor::schatten(1),
                                   NormDescriptor::schatten(2), NormDescriptor::schatten(3.5)};
    for (Index j = 1; j <= n; ++j) ns.push_back(NormDescriptor::kyfan(j));
    for (const auto& nm : ns) {
      const std::string tag = nm.to_string();
      const double nx = norm_value(x, nm), ny = norm_value(y, nm);
      o.require(nx > 0, "positive " + tag);
      const double inv = std::abs(norm_value(z, nm) - nx) / nx;
      worstInv = std::max(worstInv, inv);
      o.require(inv <= 1e-10, "unitary invariance " + tag + " " + num(inv));
      o.require(norm_value(x + y, nm) <= (nx + ny) * (1 + 1e-12), "triangle " + tag);
      o.require(std::abs(norm_value(c * x, nm) - std::abs(c) * nx) <= 1e-12 * (1 + std::abs(c) * nx), "homogeneity " + tag);
    }
    const double op = norm_value(x, NormDescriptor::operator_norm());
    o.require(std::abs(op - spectral_norm(x)) <= 1e-12 * op, "schatten:inf = spectral");
    o.require(std::abs(op - norm_value(x, NormDescriptor::kyfan(1))) <= 1e-12 * op, "kyfan:1 = schatten:inf");
    const double tr = norm_value(x, NormDescriptor::schatten(1));
    o.require(std::abs(tr - norm_value(x, NormDescriptor::kyfan(n))) <= 1e-12 * tr, "kyfan:n = schatten:1");
    o.require(norm_value(x, NormDescriptor::schatten(2)) <= tr * (1 + 1e-12), "schatten decreasing in p");
  }
  o.detail << "200 trials; worst unitary invariance rel err " << num(worstInv);
}

// ---- 7

void determinism(Outcome& o) {
  SuitePlan plan = SuitePlan::named("standard");
  plan.seed = 1;
  auto render_with = [&](int threads, const std::vector<CheckResult>* reuse) {
    plan.threads = threads;
    ReportDocument doc;
    doc.timestamp = utc_timestamp();
    doc.plan = plan_json(plan);
    doc.plan.erase("threads");
    doc.results = reuse ? *reuse : run_verify(plan);
    static const std::regex ts("\"timestamp\": \"[^\"]*\"");
    return std::regex_replace(render_json(doc), ts, "\"timestamp\": \"\"");
  };
  const std::string one = render_with(1, standardResults.empty() ? nullptr : &standardResults);
  const std::string four = render_with(4, nullptr);
  o.require(one == four, "reports differ between 1 and 4 threads");
  o.detail << "standard suite, seed 1: " << one.size() << " bytes, identical at 1 and 4 threads";
}

// ---- 8

void tightness(Outcome& o) {
  GridOverrides g;
  g.v = std::vector<double>{1.0, 1.5, 2.0};
  g.norms = std::vector<NormDescriptor>{NormDescriptor::operator_norm()};
  const auto rows = tightness_scan("thm23-ah", g, {1, 2, 3, 5}, 20, 1);
  int tight = 0;
  double worstGap = 0.0, maxOther = 0.0;
  for (const auto& row : rows) {
    o.require(!row.violation, "violation in thm23-ah scan");
    if (!row.maxRatio) continue;
    if (std::get<double>(row.params.at("v")) == 1.0) {
      ++tight;
      worstGap = std::max(worstGap, std::abs(*row.maxRatio - 1.0));
    } else {
      maxOther = std::max(maxOther, *row.maxRatio);
    }
  }
  o.require(tight > 0, "no v = 1 rows");
  o.require(worstGap <= 1e-9, "v = 1 max ratio off 1 by " + num(worstGap));
  o.require(maxOther <= 1.0 + 1e-9, "v > 1 max ratio " + num(maxOther));

  GridOverrides c;
  c.p = std::vector<double>{0.5, 1.0, 2.0};
  double cor = 0.0;
  for (const auto& row : tightness_scan("cor35", c, {1, 2, 3}, 3, 1)) {
    o.require(!row.violation, "violation in cor35 scan");
    if (row.maxRatio) cor = std::max(cor, *row.maxRatio);
  }
  o.require(cor <= 1.0 + 1e-9, "cor35 max ratio " + num(cor));
  GridOverrides none;
  none.v = std::vector<double>{};
  o.require(tightness_scan("thm23-ah", none, {2}, 5, 1).empty(), "empty grid gives rows");
  o.detail << rows.size() << " thm23-ah rows, " << tight << " at v = 1 with max |ratio - 1| " << num(worstGap)
           << ", other max " << num(maxOther) << "; cor35 max " << num(cor);
}

}  // namespace

int main() {
  report(1, "standard suite (seed 1) has no Fail and every NotApplicable has a witness", standard_suite);
  report(2, "n = 1 sides agree with the scalar oracle to 1e-12 relative (100 draws per check)", scalar_oracle);
  report(3, "constants match closed forms and limits", constants);
  report(4, "normed limit: err non-increasing, err(0.001) <= 1% of target, fixtures exact", limit);
  report(5, "mean axioms over 200 random trials", mean_axioms);
  report(6, "norm axioms over 200 random trials", norm_axioms);
  report(7, "reports are byte-identical across thread counts (timestamp blanked)", determinism);
  report(8, "tightness scan: v = 1 is tight, no ratio above 1", tightness);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
