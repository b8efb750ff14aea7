#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "lomax_records/stats.hpp"

using namespace lomax_records;
using Catch::Approx;

namespace {

// Erlang survival e^-z sum_{k<a} z^k / k!, summed in long double.
long double erlang_sf(int a, long double z) {
  long double term = std::exp(-z);
  long double sum = 0.0L;
  for (int k = 0; k < a; ++k) {
    sum += term;
    term *= z / (k + 1);
  }
  return sum;
}

// Erlang cdf e^-z sum_{k>=a} z^k / k!, so small values keep their digits.
long double erlang_cdf(int a, long double z) {
  long double term = std::exp(-z);
  for (int k = 0; k < a; ++k) term *= z / (k + 1);
  long double sum = 0.0L;
  for (int k = a; term > sum * 1e-22L; ++k) {
    sum += term;
    term *= z / (k + 1);
  }
  return sum;
}

}  // namespace

TEST_CASE("integer-shape gamma cdf", "[stats]") {
  for (int a : {1, 2, 5, 10, 40}) {
    for (double scale : {0.5, 1.0, 3.0}) {
      for (double q : {0.2, 0.7, 1.0, 1.3, 3.0}) {
        const double t = q * a * scale;
        const long double sf = erlang_sf(a, static_cast<long double>(t) / scale);
        INFO("a=" << a << " scale=" << scale << " t=" << t);
        CHECK(gamma_sf(a, scale, t) == Approx(static_cast<double>(sf)).epsilon(1e-12));
        CHECK(gamma_cdf(a, scale, t) == Approx(static_cast<double>(erlang_cdf(a, static_cast<long double>(t) / scale))).epsilon(1e-12));
      }
    }
  }
  CHECK(gamma_cdf(3, 1.0, 0.0) == 0.0);
  CHECK(gamma_cdf(3, 1.0, -1.0) == 0.0);
  CHECK(gamma_sf(3, 1.0, 0.0) == 1.0);
  CHECK(gamma_cdf(1, 2.0, 2.0) == Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(gamma_sf(5, 1.0, 500.0) == Approx(static_cast<double>(erlang_sf(5, 500.0L))).epsilon(1e-10));
  CHECK_THROWS_AS(gamma_cdf(0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gamma_sf(2, 0.0, 1.0), std::domain_error);
}

TEST_CASE("exact theta_hat tail", "[stats]") {
  // theta_hat = T/m with T ~ Gamma(m, 1)
  const int m = 160;
  const long double want = erlang_cdf(m, 152.0L) + erlang_sf(m, 168.0L);
  CHECK(theta_hat_exceedance_exact(m, 1.0, 0.05) == Approx(static_cast<double>(want)).epsilon(1e-12));
  CHECK(theta_hat_exceedance_exact(m, 2.0, 0.1) == Approx(static_cast<double>(want)).epsilon(1e-12));
}

TEST_CASE("Kolmogorov distribution", "[stats]") {
  CHECK(kolmogorov_quantile(0.01) == Approx(1.62762).margin(1e-4));
  CHECK(kolmogorov_quantile(0.05) == Approx(1.35810).margin(1e-4));
  CHECK(kolmogorov_survival(1.0 - 1e-12) == Approx(kolmogorov_survival(1.0 + 1e-12)).margin(1e-10));
  CHECK(kolmogorov_survival(0.0) == 1.0);
  CHECK(kolmogorov_survival(5.0) < 1e-20);
  double prev = 1.0;
  for (double l = 0.1; l < 3.0; l += 0.05) {
    const double q = kolmogorov_survival(l);
    CHECK(q <= prev);
    prev = q;
  }
}

TEST_CASE("KS statistics by hand", "[stats]") {
  auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(ks_statistic(std::vector<double>{0.5}, uniform) == Approx(0.5));
  CHECK(ks_statistic(std::vector<double>{0.25, 0.75}, uniform) == Approx(0.25));
  CHECK(ks_statistic_two_sample(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}) == 0.0);
  CHECK(ks_statistic_two_sample(std::vector<double>{1, 2}, std::vector<double>{3, 4}) == 1.0);
  CHECK(ks_statistic_two_sample(std::vector<double>{1, 3}, std::vector<double>{2, 4}) == Approx(0.5));
  CHECK_THROWS_AS(ks_statistic(std::vector<double>{}, uniform), std::invalid_argument);
}

TEST_CASE("KS test accepts and rejects", "[stats]") {
  std::vector<double> grid;
  for (int i = 0; i < 2000; ++i) grid.push_back((i + 0.5) / 2000.0);
  auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(ks_test(grid, uniform).passed);
  std::vector<double> squeezed;
  for (double u : grid) squeezed.push_back(u * u);
  const KsResult bad = ks_test(squeezed, uniform);
  CHECK_FALSE(bad.passed);
  CHECK(bad.p_value < 1e-6);
}
