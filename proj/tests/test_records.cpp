#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "lomax_records/estimators.hpp"
#include "lomax_records/records.hpp"
#include "lomax_records/stats.hpp"

using namespace lomax_records;
using Catch::Approx;

namespace {
std::vector<double> as_vector(std::span<const double> s) { return {s.begin(), s.end()}; }
}  // namespace

TEST_CASE("record extraction", "[records]") {
  const std::vector<double> raw{3, 1, 4, 1, 5};
  CHECK(as_vector(extract_upper_records(raw).values()) == std::vector<double>{3, 4, 5});
  const std::vector<double> up{1, 2, 3};
  CHECK(as_vector(extract_upper_records(up).values()) == up);
  const std::vector<double> down{5, 4, 3};
  CHECK(as_vector(extract_upper_records(down).values()) == std::vector<double>{5});
  const std::vector<double> ties{2, 2, 2, 3, 3};
  CHECK(as_vector(extract_upper_records(ties).values()) == std::vector<double>{2, 3});

  CHECK_THROWS_AS(extract_upper_records(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(extract_upper_records(std::vector<double>{1.0, std::nan("")}), std::domain_error);
}

TEST_CASE("extraction is idempotent", "[records]") {
  RandomStream rng(11, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const auto raw = sample(200, LomaxParams(1.5), rng);
    const RecordSequence once = extract_upper_records(raw);
    const RecordSequence twice = extract_upper_records(once.values());
    CHECK(once == twice);
  }
}

TEST_CASE("sequence validation", "[records]") {
  CHECK_THROWS_AS(RecordSequence::from_values({1.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(RecordSequence::from_values({2.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(RecordSequence::from_values({}), std::invalid_argument);
  CHECK_THROWS_AS(RecordSequence::from_log_excess({-0.5}), std::domain_error);
  const auto r = RecordSequence::from_log_excess({1.0, 2.0});
  CHECK(r.last() == Approx(std::expm1(2.0)));
  CHECK(r.log_excess_last() == 2.0);
}

TEST_CASE("simulated records are strictly increasing", "[records]") {
  RandomStream rng(3, 3);
  for (std::size_t m : {1u, 2u, 5u, 50u, 500u}) {
    const RecordSequence r = sample_records(m, LomaxParams(0.7), rng);
    REQUIRE(r.size() == m);
    const auto v = r.values();
    const auto s = r.log_excess();
    for (std::size_t i = 1; i < m; ++i) {
      CHECK(v[i] > v[i - 1]);
      CHECK(s[i] > s[i - 1]);
    }
  }
  CHECK_THROWS_AS(sample_records(0, LomaxParams(1.0), rng), std::invalid_argument);
}

TEST_CASE("log of the last record is Gamma(m, theta)", "[records]") {
  constexpr int reps = 100'000;
  const LomaxParams p(1.0);
  std::vector<double> t;
  t.reserve(reps);
  for (int r = 0; r < reps; ++r) {
    RandomStream rng(99, static_cast<std::uint64_t>(r));
    t.push_back(sample_records(5, p, rng).log_excess_last());
  }
  double mean = 0.0;
  for (double v : t) mean += v;
  mean /= reps;
  double var = 0.0;
  for (double v : t) var += (v - mean) * (v - mean);
  var /= reps - 1;
  // Gamma(5, 1): mean 5, variance 5, fourth central moment 3*25 + 6*5 = 105
  CHECK(std::fabs(mean - 5.0) < 3.0 * std::sqrt(5.0 / reps));
  CHECK(std::fabs(var - 5.0) < 3.0 * std::sqrt((105.0 - 25.0) / reps));
  CHECK(ks_test(t, [](double v) { return gamma_cdf(5, 1.0, v); }).passed);
}

TEST_CASE("first record is a plain Lomax draw", "[records]") {
  constexpr int reps = 100'000;
  const LomaxParams p(2.0);
  std::vector<double> r1;
  r1.reserve(reps);
  for (int r = 0; r < reps; ++r) {
    RandomStream rng(7, static_cast<std::uint64_t>(r));
    r1.push_back(sample_records(1, p, rng).last());
  }
  CHECK(ks_test(r1, [&](double x) { return cdf(x, p).value(); }).passed);
}

TEST_CASE("direct records match records extracted from raw sequences", "[records]") {
  // Waiting times between records in an i.i.d. sequence are heavy tailed, so
  // keep m small and give up on the (rare) very long sequences.
  constexpr std::size_t m = 3;
  constexpr int reps = 10'000;
  const LomaxParams p(1.0);
  std::vector<double> direct;
  std::vector<double> extracted;
  for (int r = 0; r < reps; ++r) {
    RandomStream rng_a(21, static_cast<std::uint64_t>(r));
    direct.push_back(sample_records(m, p, rng_a).log_excess_last());
    RandomStream rng_b(22, static_cast<std::uint64_t>(r));
    std::vector<double> raw{draw(p, rng_b)};
    std::size_t found = 1;
    double best = raw.back();
    while (found < m && raw.size() < 200'000) {
      raw.push_back(draw(p, rng_b));
      if (raw.back() > best) {
        best = raw.back();
        ++found;
      }
    }
    const RecordSequence rec = extract_upper_records(raw);
    if (rec.size() == m) extracted.push_back(rec.log_excess_last());
  }
  INFO("extracted " << extracted.size() << " of " << reps);
  CHECK(extracted.size() > reps * 99 / 100);
  CHECK(ks_test_two_sample(direct, extracted).passed);
}

TEST_CASE("joint density", "[records]") {
  const double e1 = std::numbers::e - 1.0;
  CHECK(joint_log_density(RecordSequence::from_values({e1}), LomaxParams(1.0)) == Approx(-2.0).epsilon(1e-15));
  // m = 1 reduces to the Lomax log-density
  for (double x : {0.0, 0.3, 4.0}) {
    for (double theta : {0.5, 2.0}) {
      const LomaxParams p(theta);
      CHECK(joint_log_density(RecordSequence::from_values({x}), p) == Approx(std::log(pdf(x, p))).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(joint_log_density(RecordSequence::from_values({-0.5, 1.0}), LomaxParams(1.0)), std::domain_error);
}

TEST_CASE("records MLE maximises the joint density", "[records]") {
  RandomStream rng(8, 8);
  for (int rep = 0; rep < 5; ++rep) {
    const RecordSequence r = sample_records(6, LomaxParams(1.3), rng);
    const double theta_hat = mle_from_records(r).theta_hat;
    double best_theta = 0.0;
    double best = -HUGE_VAL;
    for (int k = 1; k <= 20'000; ++k) {
      const double theta = 1e-3 * k;
      const double ll = joint_log_density(r, LomaxParams(theta));
      if (ll > best) {
        best = ll;
        best_theta = theta;
      }
    }
    CHECK(best_theta == Approx(theta_hat).margin(1e-3));
  }
}
