#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "lomax_records/montecarlo.hpp"

using namespace lomax_records;
using Catch::Approx;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same(const TargetSummary& a, const TargetSummary& b) {
  if (a.exceedance.size() != b.exceedance.size()) return false;
  for (std::size_t i = 0; i < a.exceedance.size(); ++i) {
    if (!same_bits(a.exceedance[i].probability, b.exceedance[i].probability)) return false;
  }
  return a.name == b.name && a.replications == b.replications && same_bits(a.mean, b.mean) &&
         same_bits(a.variance, b.variance) && same_bits(a.mse, b.mse) && same_bits(a.mse_se, b.mse_se) &&
         same_bits(a.mean_se, b.mean_se);
}

McConfig base_config() {
  McConfig c;
  c.replications = 20'000;
  c.count = 5;
  c.x_grid = {0.0, 0.5, 2.0};
  c.epsilons = {0.05, 0.2};
  return c;
}

}  // namespace

TEST_CASE("config validation", "[montecarlo]") {
  McConfig c = base_config();
  c.replications = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = base_config();
  c.workers = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = base_config();
  c.x_grid = {1.0, 0.5};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = base_config();
  c.epsilons = {-1.0};
  CHECK_THROWS_AS(c.validate(), std::domain_error);
  c = base_config();
  c.count = 2;
  CHECK_THROWS_AS(mc_plugin_moments(c), std::invalid_argument);
}

TEST_CASE("results do not depend on the worker count", "[montecarlo]") {
  McConfig c = base_config();
  std::vector<McSummary> mse;
  std::vector<std::vector<PluginMoments>> moments;
  std::vector<std::vector<double>> hats;
  std::vector<std::vector<ConvergenceRow>> scans;
  const std::size_t ms[] = {5, 10};
  for (std::size_t w : {1u, 2u, 8u}) {
    c.workers = w;
    mse.push_back(mc_estimator_mse(c, Estimator::RecordMLE, Transform::Log));
    moments.push_back(mc_plugin_moments(c));
    hats.push_back(mc_theta_hats(c, Estimator::SampleMLE));
    scans.push_back(mc_convergence_scan(c, ms, 0.1));
  }
  for (std::size_t k = 1; k < mse.size(); ++k) {
    CHECK(same(mse[0].targets[0], mse[k].targets[0]));
    for (std::size_t i = 0; i < moments[0].size(); ++i) {
      CHECK(same(moments[0][i].pdf_hat, moments[k][i].pdf_hat));
      CHECK(same(moments[0][i].cdf_hat, moments[k][i].cdf_hat));
    }
    CHECK(std::equal(hats[0].begin(), hats[0].end(), hats[k].begin(), same_bits));
    for (std::size_t i = 0; i < scans[0].size(); ++i) {
      CHECK(same_bits(scans[0][i].theta_hat.probability, scans[k][i].theta_hat.probability));
      CHECK(same_bits(scans[0][i].pdf_hat.probability, scans[k][i].pdf_hat.probability));
    }
  }
}

TEST_CASE("single replication", "[montecarlo]") {
  McConfig c = base_config();
  c.replications = 1;
  const McSummary s = mc_estimator_mse(c, Estimator::RecordMLE, Transform::Identity);
  const double err = simulate_theta_hat(Estimator::RecordMLE, c, 0, 0) - 1.0;
  CHECK(s.targets[0].replications == 1);
  CHECK(s.targets[0].mse == err * err);
}

TEST_CASE("records MSE matches the Gamma law", "[montecarlo]") {
  McConfig c = base_config();
  c.replications = 100'000;
  c.workers = 4;
  const TargetSummary t = mc_estimator_mse(c, Estimator::RecordMLE, Transform::Identity).targets[0];
  // theta_hat ~ Gamma(5, 1)/5 is unbiased with variance 1/5
  CHECK(std::fabs(t.mse - 0.2) < 3.0 * t.mse_se);
  CHECK(std::fabs(t.mean - 1.0) < 3.0 * t.mean_se);
}

TEST_CASE("MSE equality of records and samples", "[montecarlo]") {
  McConfig c = base_config();
  c.replications = 100'000;
  c.workers = 4;
  for (Transform g : {Transform::Identity, Transform::Reciprocal, Transform::Log}) {
    const auto a = mc_estimator_mse(c, Estimator::RecordMLE, g).targets[0];
    const auto b = mc_estimator_mse(c, Estimator::SampleMLE, g).targets[0];
    INFO(to_string(g));
    CHECK(std::fabs(a.mse - b.mse) <= 3.0 * (a.mse_se + b.mse_se));
  }
}

TEST_CASE("standard errors scale as 1/sqrt(replications)", "[montecarlo]") {
  std::vector<double> ratios;
  for (std::uint64_t seed = 1; seed <= 7; ++seed) {
    McConfig c = base_config();
    c.master_seed = seed;
    c.workers = 4;
    c.replications = 10'000;
    const double se1 = mc_estimator_mse(c, Estimator::SampleMLE, Transform::Identity).targets[0].mse_se;
    c.master_seed = seed + 1000;
    c.replications = 40'000;
    const double se4 = mc_estimator_mse(c, Estimator::SampleMLE, Transform::Identity).targets[0].mse_se;
    ratios.push_back(se1 / se4);
  }
  std::nth_element(ratios.begin(), ratios.begin() + 3, ratios.end());
  CHECK(ratios[3] == Approx(2.0).epsilon(0.2));
}

TEST_CASE("plug-in moments at x = 0", "[montecarlo]") {
  McConfig c = base_config();
  const auto m = mc_plugin_moments(c);
  CHECK(m[0].cdf_hat.mean == 0.0);
  CHECK(m[0].cdf_hat.mse == 0.0);
  CHECK(m[0].pdf_hat.truth == 1.0);
}

TEST_CASE("convergence scan", "[montecarlo]") {
  McConfig c = base_config();
  c.workers = 4;
  c.x_grid = {0.5};
  const std::size_t ms[] = {10, 40, 160};
  const auto wide = mc_convergence_scan(c, ms, 1.5);
  for (const auto& row : wide) CHECK(row.cdf_hat.probability == 0.0);

  const auto rows = mc_convergence_scan(c, ms, 0.05);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].theta_hat.probability < rows[0].theta_hat.probability);
  CHECK(rows[2].theta_hat.probability < rows[1].theta_hat.probability);
  const double exact = theta_hat_exceedance_exact(160, 1.0, 0.05);
  CHECK(std::fabs(rows[2].theta_hat.probability - exact) < 3.0 * rows[2].theta_hat.standard_error);

  const std::size_t bad[] = {10, 10};
  CHECK_THROWS_AS(mc_convergence_scan(c, bad, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(mc_convergence_scan(c, ms, 0.0), std::domain_error);
}

TEST_CASE("failures are counted, not dropped", "[montecarlo]") {
  McConfig c = base_config();
  c.replications = 5000;
  c.workers = 3;
  const McSummary s = detail::run_targets(c, {"t"}, {0.0}, [](std::uint64_t r, std::span<double> out) {
    if (r % 1000 == 7) throw DegenerateEstimate("bad replication " + std::to_string(r));
    out[0] = 1.0;
  });
  CHECK(s.requested == 5000);
  CHECK(s.failures == 5);
  CHECK(s.first_failure == "bad replication 7");
  CHECK(s.targets[0].replications == 4995);
  CHECK(s.targets[0].mse == 1.0);
}

TEST_CASE("distributional checks", "[montecarlo]") {
  // Each KS check rejects a true law 1% of the time, so a single seed is not
  // a fair test. Over 5 seeds the chance that a correct law fails twice is
  // about 1e-3.
  for (double theta : {1.0, 2.0}) {
    std::vector<int> failures(4, 0);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      McConfig c = base_config();
      c.master_seed = seed;
      c.replications = 10'000;
      c.workers = 4;
      c.params = LomaxParams(theta);
      const DistributionalReport r = distributional_check(c);
      REQUIRE(r.checks.size() == 4);
      for (std::size_t i = 0; i < 4; ++i) failures[i] += r.checks[i].ks.passed ? 0 : 1;
    }
    for (std::size_t i = 0; i < 4; ++i) {
      INFO("theta=" << theta << " check " << i);
      CHECK(failures[i] <= 1);
    }
  }
  McConfig c = base_config();
  c.replications = 10'000;
  const DistributionalReport a = distributional_check(c);
  c.workers = 8;
  const DistributionalReport b = distributional_check(c);
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(same_bits(a.checks[i].ks.statistic, b.checks[i].ks.statistic));
  }
}
