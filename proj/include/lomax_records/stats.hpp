#pragma once

// Reference distributions and Kolmogorov-Smirnov machinery for the
// distributional checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

namespace lomax_records {

namespace detail {
inline double gamma_z(int shape, double scale, double t, const char* who) {
  if (shape < 1) throw std::invalid_argument(std::string(who) + ": shape must be >= 1");
  if (!(scale > 0.0)) throw std::domain_error(std::string(who) + ": scale must be > 0");
  return t / scale;
}
}  // namespace detail

/// CDF of Gamma(shape, scale) at t, i.e. the regularised lower incomplete
/// gamma P(shape, t / scale).
inline double gamma_cdf(int shape, double scale, double t) {
  const double z = detail::gamma_z(shape, scale, t, "gamma_cdf");
  if (!(z > 0.0)) return 0.0;
  if (std::isinf(z)) return 1.0;
  return boost::math::gamma_p(static_cast<double>(shape), z);
}

/// 1 - gamma_cdf without the cancellation.
inline double gamma_sf(int shape, double scale, double t) {
  const double z = detail::gamma_z(shape, scale, t, "gamma_sf");
  if (!(z > 0.0)) return 1.0;
  if (std::isinf(z)) return 0.0;
  return boost::math::gamma_q(static_cast<double>(shape), z);
}

inline double exponential_cdf(double scale, double t) {
  if (!(scale > 0.0)) throw std::domain_error("exponential_cdf: scale must be > 0");
  return t > 0.0 ? -std::expm1(-t / scale) : 0.0;
}

/// P(|theta_hat - theta| >= eps) for theta_hat = T/m, T ~ Gamma(m, theta).
inline double theta_hat_exceedance_exact(int m, double theta, double eps) {
  const double md = static_cast<double>(m);
  const double lower = md * (theta - eps);
  const double upper = md * (theta + eps);
  return gamma_cdf(m, theta, lower) + gamma_sf(m, theta, upper);
}

/// Survival function of the limiting Kolmogorov distribution,
/// Q(lambda) = P(K > lambda).
inline double kolmogorov_survival(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.0) {
    // P(K <= lambda) = sqrt(2 pi)/lambda sum_{k>=1} exp(-(2k-1)^2 pi^2 / (8 lambda^2))
    const double c = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k < 50; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(-odd * odd * c);
      cdf += term;
      if (term < 1e-18) break;
    }
    return 1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * cdf;
  }
  double q = 0.0;
  for (int k = 1; k < 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    q += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-18) break;
  }
  return std::clamp(q, 0.0, 1.0);
}

/// lambda with kolmogorov_survival(lambda) = alpha. Approximately 1.6276 at
/// alpha = 0.01.
inline double kolmogorov_quantile(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("kolmogorov_quantile: alpha must be in (0,1)");
  double lo = 0.05;
  double hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (kolmogorov_survival(mid) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct KsResult {
  double statistic = 0.0;
  double critical_value = 0.0;  ///< at the requested level
  double p_value = 1.0;         ///< asymptotic
  std::size_t n = 0;            ///< effective sample size
  bool passed = false;          ///< statistic < critical_value
};

/// One-sample KS statistic of data against a continuous cdf. Sorts a copy.
template <class Cdf>
double ks_statistic(std::span<const double> data, Cdf&& cdf) {
  if (data.empty()) throw std::invalid_argument("ks_statistic: empty data");
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double di = static_cast<double>(i);
    d = std::max({d, (di + 1.0) / n - f, f - di / n});
  }
  return d;
}

template <class Cdf>
KsResult ks_test(std::span<const double> data, Cdf&& cdf, double alpha = 0.01) {
  KsResult r;
  r.n = data.size();
  r.statistic = ks_statistic(data, std::forward<Cdf>(cdf));
  const double root_n = std::sqrt(static_cast<double>(r.n));
  r.critical_value = kolmogorov_quantile(alpha) / root_n;
  r.p_value = kolmogorov_survival(root_n * r.statistic);
  r.passed = r.statistic < r.critical_value;
  return r;
}

/// Two-sample KS statistic sup |F_a - F_b|.
inline double ks_statistic_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic_two_sample: empty input");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double v = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == v) ++i;
    while (j < sb.size() && sb[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

inline KsResult ks_test_two_sample(std::span<const double> a, std::span<const double> b, double alpha = 0.01) {
  KsResult r;
  r.statistic = ks_statistic_two_sample(a, b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double n_eff = na * nb / (na + nb);
  r.n = static_cast<std::size_t>(n_eff);
  r.critical_value = kolmogorov_quantile(alpha) / std::sqrt(n_eff);
  r.p_value = kolmogorov_survival(std::sqrt(n_eff) * r.statistic);
  r.passed = r.statistic < r.critical_value;
  return r;
}

}  // namespace lomax_records
