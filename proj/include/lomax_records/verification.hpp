#pragma once

// The acceptance suite: numbered criteria checked against analytic series,
// quadrature, exact Gamma laws and Monte Carlo. Reports contain only
// deterministic quantities so that equal seeds give byte-identical text;
// wall-clock timings are kept apart in `timings`.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lomax_records/analytic.hpp"
#include "lomax_records/lomax.hpp"
#include "lomax_records/montecarlo.hpp"
#include "lomax_records/quadrature.hpp"
#include "lomax_records/stats.hpp"

namespace lomax_records {

enum class Suite { Fast, Full };

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::vector<std::string> details;
};

struct CriterionTiming {
  int id = 0;
  double seconds = 0.0;
  double budget_seconds = 0.0;  ///< 0 when the criterion has no budget
};

struct VerificationReport {
  Suite suite = Suite::Full;
  std::uint64_t seed = kDefaultSeed;
  std::vector<CriterionResult> criteria;
  std::vector<CriterionTiming> timings;

  bool all_passed() const {
    for (const auto& c : criteria) {
      if (!c.passed) return false;
    }
    return !criteria.empty();
  }

  /// One line per criterion, then indented detail lines. No timings, so the
  /// text is reproducible.
  std::string render_text() const {
    std::ostringstream os;
    os << "suite: " << (suite == Suite::Full ? "full" : "fast") << "  seed: " << seed << "\n";
    std::size_t passed = 0;
    for (const auto& c : criteria) {
      passed += c.passed ? 1 : 0;
      os << (c.passed ? "[PASS] " : "[FAIL] ") << "C" << c.id << " " << c.title << "\n";
      for (const auto& d : c.details) os << "       " << d << "\n";
    }
    os << "result: " << passed << "/" << criteria.size() << " criteria passed\n";
    return os.str();
  }
};

namespace detail {

inline std::string fmt(const char* format, auto... args) {
  std::array<char, 512> buf{};
  std::snprintf(buf.data(), buf.size(), format, args...);
  return buf.data();
}

/// Replication counts per suite.
struct SuiteScale {
  std::size_t mse_reps;       // C1
  std::size_t ks_reps;        // C2
  std::size_t moment_reps;    // C4
  std::size_t converge_reps;  // C8
};

inline SuiteScale scale_for(Suite s) {
  if (s == Suite::Full) return {100'000, 10'000, 1'000'000, 10'000};
  return {20'000, 5'000, 100'000, 5'000};
}

inline bool within(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// C1: MSE of g(theta_hat) agrees for records and samples of equal size.
inline CriterionResult criterion_mse_equality(std::uint64_t seed, std::size_t workers, const SuiteScale& sc) {
  CriterionResult r{1, "MSE of g(theta_hat): records vs sample, n = m = 5, theta = 1", true, {}};
  McConfig cfg;
  cfg.master_seed = seed;
  cfg.workers = workers;
  cfg.replications = sc.mse_reps;
  cfg.count = 5;
  for (Transform g : {Transform::Identity, Transform::Reciprocal, Transform::Log}) {
    const auto rec = mc_estimator_mse(cfg, Estimator::RecordMLE, g).targets[0];
    const auto smp = mc_estimator_mse(cfg, Estimator::SampleMLE, g).targets[0];
    const bool overlap = std::fabs(rec.mse - smp.mse) <= 3.0 * rec.mse_se + 3.0 * smp.mse_se;
    r.passed = r.passed && overlap;
    r.details.push_back(fmt("g=%-10s records %.6f +- %.6f  sample %.6f +- %.6f  (3-SE intervals %s)",
                            std::string(to_string(g)).c_str(), rec.mse, rec.mse_se, smp.mse, smp.mse_se,
                            overlap ? "overlap" : "DISJOINT"));
  }
  r.details.push_back(fmt("replications per estimator: %zu", sc.mse_reps));
  return r;
}

// C2: the two theta_hat samples are indistinguishable by a two-sample KS test.
inline CriterionResult criterion_distribution_equality(std::uint64_t seed, std::size_t workers,
                                                       const SuiteScale& sc) {
  CriterionResult r{2, "theta_hat law: records vs sample, two-sample KS at 1%", false, {}};
  McConfig cfg;
  cfg.master_seed = seed;
  cfg.workers = workers;
  cfg.replications = sc.ks_reps;
  cfg.count = 5;
  const auto a = mc_theta_hats(cfg, Estimator::RecordMLE);
  const auto b = mc_theta_hats(cfg, Estimator::SampleMLE);
  const KsResult ks = ks_test_two_sample(a, b, 0.01);
  r.passed = ks.passed;
  r.details.push_back(fmt("D = %.6f  critical(1%%) = %.6f  p = %.4f  (%zu per set)", ks.statistic,
                          ks.critical_value, ks.p_value, sc.ks_reps));
  return r;
}

// C3: series agree with direct quadrature.
inline CriterionResult criterion_series_vs_quadrature() {
  CriterionResult r{3, "series vs quadrature, relative tolerance 1e-8", true, {}};
  const double xs[] = {0.0, 0.1, 0.5, 1.0, 2.0};
  const double thetas[] = {0.5, 1.0, 2.0};
  const int ms[] = {3, 5, 8, 12, 20};
  int evaluated = 0;
  int flagged = 0;
  int failures = 0;
  int quad_failures = 0;
  double worst = 0.0;
  double worst_finite_only = 0.0;
  for (double x : xs) {
    for (double th : thetas) {
      const LomaxParams p(th);
      for (int m : ms) {
        const std::pair<SeriesResult, PluginMoment> cases[] = {
            {expected_pdf_hat(x, p, m), PluginMoment::PdfHat},
            {expected_cdf_hat(x, p, m), PluginMoment::CdfHat},
            {second_moment_pdf_hat(x, p, m), PluginMoment::PdfHatSquared},
        };
        for (const auto& [series, moment] : cases) {
          ++evaluated;
          const QuadratureResult q = quadrature_oracle(moment, x, p, m);
          if (!q.converged) {
            ++quad_failures;
            continue;
          }
          const double scale = std::max(std::fabs(q.value), 1e-300);
          const double rel = q.value == 0.0 ? std::fabs(series.value) : std::fabs(series.value - q.value) / scale;
          const double rel_finite =
              q.value == 0.0 ? std::fabs(series.finite_part) : std::fabs(series.finite_part - q.value) / scale;
          worst_finite_only = std::max(worst_finite_only, rel_finite);
          if (series.cancellation_flag) {
            ++flagged;
            r.details.push_back(fmt("flagged: %s x=%g theta=%g m=%d", std::string(to_string(moment)).c_str(), x, th, m));
            continue;
          }
          worst = std::max(worst, rel);
          if (!(rel <= 1e-8)) {
            ++failures;
            r.details.push_back(fmt("mismatch: %s x=%g theta=%g m=%d rel=%.3e",
                                    std::string(to_string(moment)).c_str(), x, th, m, rel));
          }
        }
      }
    }
  }
  const double flagged_fraction = static_cast<double>(flagged) / evaluated;
  r.passed = failures == 0 && quad_failures == 0 && flagged_fraction < 0.10;
  r.details.push_back(fmt("points: %d  max rel. error: %.3e  flagged: %d (%.1f%%)  quadrature failures: %d",
                          evaluated, worst, flagged, 100.0 * flagged_fraction, quad_failures));
  r.details.push_back(fmt("finite gamma sum without log remainder: max rel. deviation %.3e (informational)",
                          worst_finite_only));
  return r;
}

// C4: series moments agree with Monte Carlo.
inline CriterionResult criterion_series_vs_mc(std::uint64_t seed, std::size_t workers, const SuiteScale& sc) {
  CriterionResult r{4, "series vs Monte Carlo for pdf_hat and cdf_hat, 3 SE", true, {}};
  struct Case {
    double x;
    int m;
    bool pdf;
  };
  for (const Case c : {Case{0.5, 8, true}, Case{1.0, 6, false}}) {
    const LomaxParams p(1.0);
    McConfig cfg;
    cfg.master_seed = seed;
    cfg.workers = workers;
    cfg.replications = sc.moment_reps;
    cfg.count = static_cast<std::size_t>(c.m);
    cfg.x_grid = {c.x};
    const PluginMoments mc = mc_plugin_moments(cfg).front();
    const TargetSummary& t = c.pdf ? mc.pdf_hat : mc.cdf_hat;
    const SeriesResult mean = c.pdf ? expected_pdf_hat(c.x, p, c.m) : expected_cdf_hat(c.x, p, c.m);
    const SeriesResult mse = c.pdf ? mse_pdf_hat(c.x, p, c.m) : mse_cdf_hat(c.x, p, c.m);
    const bool mean_ok = within(t.mean, mean.value, 3.0 * t.mean_se);
    const bool mse_ok = within(t.mse, mse.value, 3.0 * t.mse_se);
    r.passed = r.passed && mean_ok && mse_ok && !mean.cancellation_flag && !mse.cancellation_flag;
    const char* name = c.pdf ? "pdf_hat" : "cdf_hat";
    r.details.push_back(fmt("%s x=%g m=%d mean: MC %.6f +- %.6f series %.6f (%s)", name, c.x, c.m, t.mean,
                            t.mean_se, mean.value, mean_ok ? "ok" : "off"));
    r.details.push_back(fmt("%s x=%g m=%d MSE:  MC %.6f +- %.6f series %.6f (%s)", name, c.x, c.m, t.mse,
                            t.mse_se, mse.value, mse_ok ? "ok" : "off"));
  }
  r.details.push_back(fmt("replications: %zu", sc.moment_reps));
  return r;
}

// C5: bias shrinks with m.
inline CriterionResult criterion_asymptotic_unbiasedness() {
  CriterionResult r{5, "bias of E[pdf_hat], E[cdf_hat] decreases in m; relative bias < 2% at m = 80", true, {}};
  const LomaxParams p(1.0);
  const int ms[] = {10, 20, 40, 80};
  for (double x : {0.5, 1.0}) {
    const double f = pdf(x, p);
    const double big_f = cdf(x, p).value();
    double prev_pdf = HUGE_VAL;
    double prev_cdf = HUGE_VAL;
    bool decreasing = true;
    std::string line = fmt("x=%g |bias| pdf/cdf:", x);
    for (int m : ms) {
      const double bp = std::fabs(expected_pdf_hat(x, p, m).value - f);
      const double bc = std::fabs(expected_cdf_hat(x, p, m).value - big_f);
      decreasing = decreasing && bp < prev_pdf && bc < prev_cdf;
      prev_pdf = bp;
      prev_cdf = bc;
      line += fmt(" m=%d %.3e/%.3e", m, bp, bc);
    }
    const double rel_pdf = prev_pdf / f;
    const double rel_cdf = prev_cdf / big_f;
    const bool small = rel_pdf < 0.02 && rel_cdf < 0.02;
    r.passed = r.passed && decreasing && small;
    r.details.push_back(line);
    r.details.push_back(fmt("x=%g strictly decreasing: %s  relative bias at m=80: pdf %.3e cdf %.3e", x,
                            decreasing ? "yes" : "no", rel_pdf, rel_cdf));
  }
  return r;
}

// C6: the gamma ratio limit.
inline CriterionResult criterion_gamma_ratio() {
  CriterionResult r{6, "Gamma(n-i-1) n^(i+1) / Gamma(n) -> 1", true, {}};
  double worst = 0.0;
  for (int i = 0; i <= 5; ++i) worst = std::max(worst, std::fabs(gamma_ratio(100'000, i) - 1.0));
  const double small = gamma_ratio(3, 0);
  r.passed = worst <= 1e-3 && std::fabs(small - 1.5) <= 1e-12;
  r.details.push_back(fmt("max |ratio(1e5, i) - 1| over i=0..5: %.3e (limit 1e-3)", worst));
  r.details.push_back(fmt("ratio(3, 0) = %.17g (expected 1.5)", small));
  return r;
}

// C7: the survival/density identity is approached and the 1/theta bound holds.
inline CriterionResult criterion_identity_gap() {
  CriterionResult r{7, "identity gap shrinks >= 1.5x per doubling; E[pdf_hat] < 1/theta for m >= 20", true, {}};
  const LomaxParams p(1.0);
  const int ms[] = {10, 20, 40, 80, 160};
  std::string line = "gap at x=0.5:";
  double prev = 0.0;
  double min_factor = HUGE_VAL;
  for (int m : ms) {
    const double g = asymptotic_identity_gap(0.5, p, m);
    line += fmt(" m=%d %.4e", m, g);
    if (m != ms[0]) min_factor = std::min(min_factor, std::fabs(prev) / std::fabs(g));
    prev = g;
  }
  r.details.push_back(line);
  r.details.push_back(fmt("smallest shrink factor per doubling: %.4f (need >= 1.5)", min_factor));
  std::vector<double> grid;
  for (int k = 1; k <= 20; ++k) grid.push_back(0.1 * k);
  bool bound = true;
  for (int m : {20, 40, 80, 160}) {
    const bool ok = pdf_hat_upper_bound_check(grid, p, m);
    bound = bound && ok;
    r.details.push_back(fmt("E[pdf_hat] < 1/theta on x in [0.1, 2], m=%d: %s", m, ok ? "holds" : "VIOLATED"));
  }
  r.passed = min_factor >= 1.5 && bound;
  return r;
}

// C8: exceedance probabilities decrease and match the exact Gamma tail.
inline CriterionResult criterion_convergence(std::uint64_t seed, std::size_t workers, const SuiteScale& sc) {
  CriterionResult r{8, "P(|estimate - truth| >= 0.05) decreases over m = 10, 40, 160", true, {}};
  McConfig cfg;
  cfg.master_seed = seed;
  cfg.workers = workers;
  cfg.replications = sc.converge_reps;
  cfg.x_grid = {0.5};
  const std::size_t ms[] = {10, 40, 160};
  const auto rows = mc_convergence_scan(cfg, ms, 0.05);
  bool dec_theta = true;
  bool dec_pdf = true;
  bool dec_cdf = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    r.details.push_back(fmt("m=%zu theta_hat %.4f +- %.4f  pdf_hat %.4f +- %.4f  cdf_hat %.4f +- %.4f", row.m,
                            row.theta_hat.probability, row.theta_hat.standard_error, row.pdf_hat.probability,
                            row.pdf_hat.standard_error, row.cdf_hat.probability, row.cdf_hat.standard_error));
    if (i > 0) {
      dec_theta = dec_theta && row.theta_hat.probability < rows[i - 1].theta_hat.probability;
      dec_pdf = dec_pdf && row.pdf_hat.probability < rows[i - 1].pdf_hat.probability;
      dec_cdf = dec_cdf && row.cdf_hat.probability < rows[i - 1].cdf_hat.probability;
    }
  }
  const double exact = theta_hat_exceedance_exact(160, 1.0, 0.05);
  const auto& last = rows.back().theta_hat;
  const bool tail_ok = within(last.probability, exact, 3.0 * last.standard_error);
  r.details.push_back(fmt("m=160 exact Gamma tail %.6f vs MC %.4f +- %.4f (%s)", exact, last.probability,
                          last.standard_error, tail_ok ? "ok" : "off"));
  r.details.push_back(fmt("strictly decreasing: theta_hat %s, pdf_hat %s, cdf_hat %s", dec_theta ? "yes" : "no",
                          dec_pdf ? "yes" : "no", dec_cdf ? "yes" : "no"));
  r.passed = dec_theta && dec_pdf && dec_cdf && tail_ok;
  return r;
}

// C9: closed forms at x = 0.
inline CriterionResult criterion_closed_forms() {
  CriterionResult r{9, "x = 0 closed forms m/((m-1) theta) and m^2/(theta^2 (m-1)(m-2)) to 1e-12", true, {}};
  double worst = 0.0;
  for (int m : {3, 5, 10}) {
    for (double th : {0.5, 1.0, 2.0}) {
      const LomaxParams p(th);
      const double md = m;
      const double e1 = md / ((md - 1.0) * th);
      const double e2 = md * md / (th * th * (md - 1.0) * (md - 2.0));
      worst = std::max(worst, std::fabs(expected_pdf_hat(0.0, p, m).value - e1) / e1);
      worst = std::max(worst, std::fabs(second_moment_pdf_hat(0.0, p, m).value - e2) / e2);
    }
  }
  r.passed = worst <= 1e-12;
  r.details.push_back(fmt("max relative error: %.3e", worst));
  return r;
}

struct Timed {
  CriterionResult result;
  double seconds;
};

inline Timed timed(const std::function<CriterionResult()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r = fn();
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(r), s};
}

/// Criteria 1-9.
inline VerificationReport run_core(Suite suite, std::uint64_t seed, std::size_t workers) {
  const SuiteScale sc = scale_for(suite);
  VerificationReport report;
  report.suite = suite;
  report.seed = seed;
  auto add = [&](const std::function<CriterionResult()>& fn, double budget) {
    Timed t = timed(fn);
    if (budget > 0.0 && t.seconds > budget) {
      t.result.passed = false;
      t.result.details.push_back(fmt("runtime budget of %.0f s exceeded", budget));
    }
    report.timings.push_back({t.result.id, t.seconds, budget});
    report.criteria.push_back(std::move(t.result));
  };
  // C1 has a single-threaded budget; run it with one worker.
  add([&] { return criterion_mse_equality(seed, 1, sc); }, 30.0);
  add([&] { return criterion_distribution_equality(seed, workers, sc); }, 0.0);
  add([&] { return criterion_series_vs_quadrature(); }, 10.0);
  add([&] { return criterion_series_vs_mc(seed, workers, sc); }, 60.0);
  add([&] { return criterion_asymptotic_unbiasedness(); }, 0.0);
  add([&] { return criterion_gamma_ratio(); }, 0.0);
  add([&] { return criterion_identity_gap(); }, 0.0);
  add([&] { return criterion_convergence(seed, workers, sc); }, 0.0);
  add([&] { return criterion_closed_forms(); }, 0.0);
  return report;
}

}  // namespace detail

/// Runs the acceptance criteria. Criterion 10 re-runs criteria 1-9 with
/// 1 and 4 workers and a second time with 1 worker, and compares the
/// rendered reports byte for byte.
inline VerificationReport run_verification(Suite suite, std::uint64_t seed, std::size_t workers = 1) {
  VerificationReport report = detail::run_core(suite, seed, workers);
  const auto start = std::chrono::steady_clock::now();
  const std::string one = detail::run_core(suite, seed, 1).render_text();
  const std::string four = detail::run_core(suite, seed, 4).render_text();
  const std::string base = report.render_text();
  CriterionResult det{10, "determinism across runs and worker counts {1, 4}", false, {}};
  det.passed = one == four && one == base;
  det.details.push_back(detail::fmt("workers=1 vs workers=4: %s", one == four ? "identical" : "DIFFERENT"));
  det.details.push_back(detail::fmt("repeat run vs first run: %s", one == base ? "identical" : "DIFFERENT"));
  report.timings.push_back(
      {10, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 0.0});
  report.criteria.push_back(std::move(det));
  return report;
}

}  // namespace lomax_records
