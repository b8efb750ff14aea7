#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lomax_records/lomax.hpp"
#include "lomax_records/random.hpp"
#include "lomax_records/summation.hpp"

namespace lomax_records {

/// Strictly increasing upper record values R_1 < ... < R_m.
///
/// Alongside the values the sequence keeps ln(1 + R_i). Simulated records
/// are built on that log scale, where they stay finite long after
/// exp() would overflow, and every estimator only ever needs the logs.
class RecordSequence {
 public:
  /// Validates strict increase of finite values.
  static RecordSequence from_values(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("record sequence must be nonempty");
    std::vector<double> logs;
    logs.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!std::isfinite(values[i])) throw std::domain_error("record values must be finite");
      if (i > 0 && !(values[i] > values[i - 1])) {
        throw std::domain_error("record values must be strictly increasing (position " + std::to_string(i) + ")");
      }
      logs.push_back(values[i] > -1.0 ? std::log1p(values[i]) : std::nan(""));
    }
    return RecordSequence(std::move(values), std::move(logs));
  }

  /// Builds from S_i = ln(1 + R_i); values are expm1(S_i) and may be +inf
  /// for very large S_i.
  static RecordSequence from_log_excess(std::vector<double> logs) {
    if (logs.empty()) throw std::invalid_argument("record sequence must be nonempty");
    std::vector<double> values;
    values.reserve(logs.size());
    for (std::size_t i = 0; i < logs.size(); ++i) {
      if (!(logs[i] >= 0.0) || !std::isfinite(logs[i])) {
        throw std::domain_error("log-excess values must be finite and >= 0");
      }
      if (i > 0 && !(logs[i] > logs[i - 1])) {
        throw std::domain_error("log-excess values must be strictly increasing");
      }
      values.push_back(std::expm1(logs[i]));
    }
    return RecordSequence(std::move(values), std::move(logs));
  }

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  /// ln(1 + R_i); NaN where R_i <= -1.
  std::span<const double> log_excess() const noexcept { return logs_; }
  double last() const noexcept { return values_.back(); }
  double log_excess_last() const noexcept { return logs_.back(); }
  bool nonnegative() const noexcept { return values_.front() >= 0.0; }

  friend bool operator==(const RecordSequence& a, const RecordSequence& b) { return a.values_ == b.values_; }

 private:
  RecordSequence(std::vector<double> values, std::vector<double> logs)
      : values_(std::move(values)), logs_(std::move(logs)) {}

  std::vector<double> values_;
  std::vector<double> logs_;
};

/// Upper records of a sequence: the first element, then every element
/// strictly greater than all before it. Ties do not create a record.
inline RecordSequence extract_upper_records(std::span<const double> sequence) {
  if (sequence.empty()) throw std::invalid_argument("extract_upper_records: empty input");
  std::vector<double> records;
  for (double v : sequence) {
    if (std::isnan(v)) throw std::domain_error("extract_upper_records: NaN in input");
    if (records.empty() || v > records.back()) records.push_back(v);
  }
  return RecordSequence::from_values(std::move(records));
}

/// The first m upper records of an i.i.d. Lomax sequence, generated directly:
/// ln(1 + R_i) is the i-th partial sum of i.i.d. Exponential(theta) spacings,
/// so ln(1 + R_m) ~ Gamma(m, theta). Uses exactly m uniforms.
template <UniformSource Rng>
RecordSequence sample_records(std::size_t m, const LomaxParams& params, Rng& rng) {
  if (m == 0) throw std::invalid_argument("sample_records: m must be >= 1");
  std::vector<double> logs;
  logs.reserve(m);
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double next = s - params.theta() * std::log(rng.uniform_open());
    // A spacing below half an ulp of s would round away; keep strict increase.
    s = next > s ? next : std::nextafter(s, HUGE_VAL);
    logs.push_back(s);
  }
  return RecordSequence::from_log_excess(std::move(logs));
}

namespace detail {

inline void require_nonnegative_records(const RecordSequence& records, const char* what) {
  if (!records.nonnegative()) {
    throw std::domain_error(std::string(what) + ": records must be >= 0");
  }
}

}  // namespace detail

/// ln of the joint density of (R_1, ..., R_m):
///   -m ln(theta) - ln(1 + r_m)/theta - sum_i ln(1 + r_i).
inline double joint_log_density(const RecordSequence& records, const LomaxParams& params) {
  detail::require_nonnegative_records(records, "joint_log_density");
  CompensatedSum<double> sum_logs;
  for (double s : records.log_excess()) sum_logs.add(s);
  const double m = static_cast<double>(records.size());
  return -m * std::log(params.theta()) - records.log_excess_last() / params.theta() - sum_logs.value();
}

}  // namespace lomax_records
