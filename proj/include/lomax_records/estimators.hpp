#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>

#include "lomax_records/error.hpp"
#include "lomax_records/lomax.hpp"
#include "lomax_records/records.hpp"
#include "lomax_records/summation.hpp"

namespace lomax_records {

enum class EstimateSource { Sample, Records };

constexpr std::string_view to_string(EstimateSource s) noexcept {
  return s == EstimateSource::Sample ? "sample" : "records";
}

struct EstimateReport {
  double theta_hat;
  EstimateSource source;
  std::size_t count;  ///< n observations or m records

  LomaxParams params() const { return LomaxParams(theta_hat); }
};

namespace detail {

/// sum_i ln(1 + x_i), validating x_i >= 0.
inline double sum_log1p(std::span<const double> sample, const char* what) {
  if (sample.empty()) throw std::invalid_argument(std::string(what) + ": empty sample");
  CompensatedSum<double> acc;
  for (double x : sample) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw std::domain_error(std::string(what) + ": observations must be finite and >= 0");
    }
    acc.add(std::log1p(x));
  }
  return acc.value();
}

}  // namespace detail

/// theta_hat = (1/n) sum ln(1 + x_i).
inline EstimateReport mle_from_sample(std::span<const double> sample) {
  const double total = detail::sum_log1p(sample, "mle_from_sample");
  if (!(total > 0.0)) {
    throw DegenerateEstimate("mle_from_sample: every observation is 0, theta_hat would be 0");
  }
  return {total / static_cast<double>(sample.size()), EstimateSource::Sample, sample.size()};
}

/// theta_hat = ln(1 + R_m) / m.
inline EstimateReport mle_from_records(const RecordSequence& records) {
  detail::require_nonnegative_records(records, "mle_from_records");
  const double s = records.log_excess_last();
  if (!(s > 0.0)) {
    throw DegenerateEstimate("mle_from_records: R_m = 0, theta_hat would be 0");
  }
  return {s / static_cast<double>(records.size()), EstimateSource::Records, records.size()};
}

/// Plug-in density estimate pdf(x; theta_hat_records).
inline double pdf_hat(double x, const RecordSequence& records) {
  return pdf(x, mle_from_records(records).params());
}

/// Plug-in CDF estimate cdf(x; theta_hat_records).
inline Probability cdf_hat(double x, const RecordSequence& records) {
  return cdf(x, mle_from_records(records).params());
}

/// L(theta) = -n ln(theta) - (1/theta + 1) sum ln(1 + x_i).
inline double log_likelihood_sample(std::span<const double> sample, const LomaxParams& params) {
  const double total = detail::sum_log1p(sample, "log_likelihood_sample");
  const double n = static_cast<double>(sample.size());
  const double theta = params.theta();
  return -n * std::log(theta) - (1.0 / theta + 1.0) * total;
}

/// d^2 L / d theta^2 = n/theta^2 - 2 sum ln(1 + x_i) / theta^3. At theta_hat
/// this equals -n^3 / (sum ln(1 + x_i))^2 < 0.
inline double log_likelihood_sample_curvature(std::span<const double> sample, const LomaxParams& params) {
  const double total = detail::sum_log1p(sample, "log_likelihood_sample_curvature");
  const double n = static_cast<double>(sample.size());
  const double theta = params.theta();
  return n / (theta * theta) - 2.0 * total / (theta * theta * theta);
}

}  // namespace lomax_records
