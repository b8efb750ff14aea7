#pragma once

// Deterministic replication engine.
//
// Replication r of an experiment draws from RandomStream(master_seed,
// stream_id(domain, sub, r)), so its data does not depend on which thread
// runs it. Replications are grouped into fixed-size chunks; each chunk is
// reduced in index order and chunk partials are merged in chunk order.
// Results are therefore bitwise identical for any worker count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "lomax_records/error.hpp"
#include "lomax_records/estimators.hpp"
#include "lomax_records/lomax.hpp"
#include "lomax_records/random.hpp"
#include "lomax_records/records.hpp"
#include "lomax_records/stats.hpp"

namespace lomax_records {

inline constexpr std::uint64_t kDefaultSeed = 42;

struct McConfig {
  std::uint64_t master_seed = kDefaultSeed;
  std::size_t replications = 10'000;
  std::size_t workers = 1;
  LomaxParams params{1.0};
  std::size_t count = 5;             ///< n for samples, m for records
  std::vector<double> x_grid;        ///< ascending, >= 0
  std::vector<double> epsilons;      ///< thresholds for P(|estimate - truth| >= eps)

  void validate() const {
    if (replications == 0) throw std::invalid_argument("McConfig: replications must be >= 1");
    if (replications >= (std::uint64_t{1} << 32)) throw std::invalid_argument("McConfig: too many replications");
    if (workers == 0) throw std::invalid_argument("McConfig: workers must be >= 1");
    if (count == 0) throw std::invalid_argument("McConfig: count must be >= 1");
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
      if (!(x_grid[i] >= 0.0)) throw std::domain_error("McConfig: x_grid values must be >= 0");
      if (i > 0 && !(x_grid[i] > x_grid[i - 1])) throw std::invalid_argument("McConfig: x_grid must be ascending");
    }
    for (double e : epsilons) {
      if (!(e > 0.0)) throw std::domain_error("McConfig: epsilons must be > 0");
    }
  }
};

struct Exceedance {
  double epsilon = 0.0;
  double probability = 0.0;
  double standard_error = 0.0;
};

struct TargetSummary {
  std::string name;
  double truth = 0.0;
  std::size_t replications = 0;  ///< successful replications
  double mean = 0.0;
  double variance = 0.0;         ///< sample variance of the estimate
  double mean_se = 0.0;
  double mse = 0.0;              ///< mean of (estimate - truth)^2
  double mse_se = 0.0;
  std::vector<Exceedance> exceedance;
};

struct McSummary {
  std::size_t requested = 0;
  std::size_t failures = 0;      ///< replications whose estimator threw
  std::string first_failure;     ///< message of the lowest-index failure
  std::vector<TargetSummary> targets;
};

enum class Estimator { SampleMLE, RecordMLE };

/// One-to-one transforms applied to theta_hat before scoring.
enum class Transform { Identity, Reciprocal, Log };

constexpr std::string_view to_string(Estimator e) noexcept {
  return e == Estimator::SampleMLE ? "sample-mle" : "record-mle";
}

constexpr std::string_view to_string(Transform g) noexcept {
  switch (g) {
    case Transform::Identity: return "identity";
    case Transform::Reciprocal: return "reciprocal";
    case Transform::Log: return "log";
  }
  return "?";
}

inline double apply(Transform g, double t) {
  switch (g) {
    case Transform::Identity: return t;
    case Transform::Reciprocal: return 1.0 / t;
    case Transform::Log: return std::log(t);
  }
  return t;
}

/// Stream domains keep experiments that share a seed statistically independent.
enum class StreamDomain : std::uint8_t {
  SampleData = 1,
  RecordData = 2,
  LogTransform = 3,
  PluginMoments = 4,
  Convergence = 5,
};

/// 8 bits of domain, 24 bits of sub-experiment, 32 bits of replication.
constexpr std::uint64_t stream_id(StreamDomain domain, std::uint32_t sub, std::uint64_t replication) noexcept {
  return (std::uint64_t{static_cast<std::uint8_t>(domain)} << 56) | (std::uint64_t{sub & 0xFFFFFFu} << 32) |
         (replication & 0xFFFFFFFFu);
}

namespace detail {

inline constexpr std::size_t kChunkSize = 2048;

/// Runs body(chunk_index, begin, end) for every chunk of [0, n) on up to
/// `workers` threads. The first exception thrown is rethrown on the caller.
inline void for_each_chunk(std::size_t n, std::size_t workers,
                           const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
  const std::size_t threads = std::max<std::size_t>(1, std::min(workers, chunks));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks || failed.load()) return;
      try {
        body(c, c * kChunkSize, std::min(n, (c + 1) * kChunkSize));
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

/// Welford running moments with Chan's pairwise merge.
class Moments {
 public:
  void add(double v) {
    ++n_;
    const double delta = v - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (v - mean_);
  }

  void merge(const Moments& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(n_ + o.n_);
    const double delta = o.mean_ - mean_;
    mean_ += delta * static_cast<double>(o.n_) / total;
    m2_ += o.m2_ + delta * delta * static_cast<double>(n_) * static_cast<double>(o.n_) / total;
    n_ += o.n_;
  }

  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double standard_error() const { return n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0; }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct TargetAccumulator {
  Moments estimate;
  Moments squared_error;
  std::vector<std::size_t> exceed;

  void add(double est, double truth, std::span<const double> eps) {
    const double err = est - truth;
    estimate.add(est);
    squared_error.add(err * err);
    if (exceed.size() != eps.size()) exceed.assign(eps.size(), 0);
    for (std::size_t k = 0; k < eps.size(); ++k) {
      if (std::fabs(err) >= eps[k]) ++exceed[k];
    }
  }

  void merge(const TargetAccumulator& o) {
    estimate.merge(o.estimate);
    squared_error.merge(o.squared_error);
    if (exceed.size() < o.exceed.size()) exceed.resize(o.exceed.size(), 0);
    for (std::size_t k = 0; k < o.exceed.size(); ++k) exceed[k] += o.exceed[k];
  }
};

struct ChunkResult {
  std::vector<TargetAccumulator> targets;
  std::size_t failures = 0;
  std::size_t first_failure_index = SIZE_MAX;
  std::string first_failure;
};

/// Runs `replicate(r, out)` for r in [0, replications). `replicate` writes one
/// estimate per target into out; an exception marks the replication failed.
template <class Replicate>
McSummary run_targets(const McConfig& config, std::vector<std::string> names, std::vector<double> truths,
                      Replicate&& replicate) {
  config.validate();
  const std::size_t k = truths.size();
  const std::size_t chunks = (config.replications + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkResult> partial(chunks);
  for_each_chunk(config.replications, config.workers, [&](std::size_t c, std::size_t begin, std::size_t end) {
    ChunkResult& cr = partial[c];
    cr.targets.assign(k, TargetAccumulator{});
    std::vector<double> out(k);
    for (std::size_t r = begin; r < end; ++r) {
      try {
        replicate(static_cast<std::uint64_t>(r), std::span<double>(out));
      } catch (const std::exception& e) {
        if (cr.failures++ == 0) {
          cr.first_failure_index = r;
          cr.first_failure = e.what();
        }
        continue;
      }
      for (std::size_t t = 0; t < k; ++t) cr.targets[t].add(out[t], truths[t], config.epsilons);
    }
  });

  std::vector<TargetAccumulator> total(k);
  McSummary summary;
  summary.requested = config.replications;
  std::size_t first_index = SIZE_MAX;
  for (const ChunkResult& cr : partial) {
    for (std::size_t t = 0; t < k; ++t) total[t].merge(cr.targets[t]);
    summary.failures += cr.failures;
    if (cr.first_failure_index < first_index) {
      first_index = cr.first_failure_index;
      summary.first_failure = cr.first_failure;
    }
  }
  for (std::size_t t = 0; t < k; ++t) {
    TargetSummary s;
    s.name = names[t];
    s.truth = truths[t];
    s.replications = total[t].estimate.count();
    s.mean = total[t].estimate.mean();
    s.variance = total[t].estimate.variance();
    s.mean_se = total[t].estimate.standard_error();
    s.mse = total[t].squared_error.mean();
    s.mse_se = total[t].squared_error.standard_error();
    const double n = static_cast<double>(s.replications);
    for (std::size_t e = 0; e < config.epsilons.size(); ++e) {
      Exceedance ex;
      ex.epsilon = config.epsilons[e];
      const std::size_t hits = e < total[t].exceed.size() ? total[t].exceed[e] : 0;
      ex.probability = n > 0 ? static_cast<double>(hits) / n : 0.0;
      ex.standard_error = n > 0 ? std::sqrt(ex.probability * (1.0 - ex.probability) / n) : 0.0;
      s.exceedance.push_back(ex);
    }
    summary.targets.push_back(std::move(s));
  }
  return summary;
}

/// Per-replication values collected in index order.
template <class Replicate>
std::vector<double> collect(std::size_t replications, std::size_t workers, Replicate&& replicate) {
  std::vector<double> out(replications);
  for_each_chunk(replications, workers, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) out[r] = replicate(static_cast<std::uint64_t>(r));
  });
  return out;
}

}  // namespace detail

/// theta_hat from one simulated dataset of config.count observations or records.
inline double simulate_theta_hat(Estimator estimator, const McConfig& config, std::uint32_t sub,
                                 std::uint64_t replication) {
  if (estimator == Estimator::SampleMLE) {
    RandomStream rng(config.master_seed, stream_id(StreamDomain::SampleData, sub, replication));
    const auto data = sample(config.count, config.params, rng);
    return mle_from_sample(data).theta_hat;
  }
  RandomStream rng(config.master_seed, stream_id(StreamDomain::RecordData, sub, replication));
  return mle_from_records(sample_records(config.count, config.params, rng)).theta_hat;
}

/// MSE of g(theta_hat) against g(theta) over config.replications datasets.
inline McSummary mc_estimator_mse(const McConfig& config, Estimator estimator, Transform g) {
  const double truth = apply(g, config.params.theta());
  std::string name = std::string(to_string(g)) + "(" + std::string(to_string(estimator)) + ")";
  return detail::run_targets(config, {std::move(name)}, {truth}, [&](std::uint64_t r, std::span<double> out) {
    out[0] = apply(g, simulate_theta_hat(estimator, config, 0, r));
  });
}

/// theta_hat values of every replication, in replication order.
inline std::vector<double> mc_theta_hats(const McConfig& config, Estimator estimator) {
  config.validate();
  return detail::collect(config.replications, config.workers,
                         [&](std::uint64_t r) { return simulate_theta_hat(estimator, config, 0, r); });
}

struct PluginMoments {
  double x = 0.0;
  TargetSummary pdf_hat;
  TargetSummary cdf_hat;
};

/// Mean and MSE of pdf_hat(x) and cdf_hat(x) from config.count records, for
/// every x in config.x_grid. Requires count >= 3 (pdf_hat has no finite
/// second moment below that).
inline std::vector<PluginMoments> mc_plugin_moments(const McConfig& config) {
  if (config.count < 3) throw std::invalid_argument("mc_plugin_moments: m must be >= 3");
  if (config.x_grid.empty()) throw std::invalid_argument("mc_plugin_moments: x_grid is empty");
  std::vector<std::string> names;
  std::vector<double> truths;
  for (double x : config.x_grid) {
    names.push_back("pdf_hat(" + std::to_string(x) + ")");
    truths.push_back(pdf(x, config.params));
    names.push_back("cdf_hat(" + std::to_string(x) + ")");
    truths.push_back(cdf(x, config.params).value());
  }
  const McSummary s =
      detail::run_targets(config, std::move(names), std::move(truths), [&](std::uint64_t r, std::span<double> out) {
        RandomStream rng(config.master_seed, stream_id(StreamDomain::PluginMoments, 0, r));
        const LomaxParams est = mle_from_records(sample_records(config.count, config.params, rng)).params();
        for (std::size_t i = 0; i < config.x_grid.size(); ++i) {
          out[2 * i] = pdf(config.x_grid[i], est);
          out[2 * i + 1] = cdf(config.x_grid[i], est).value();
        }
      });
  if (s.failures > 0) {
    throw std::runtime_error("mc_plugin_moments: " + std::to_string(s.failures) +
                             " replications failed: " + s.first_failure);
  }
  std::vector<PluginMoments> out;
  for (std::size_t i = 0; i < config.x_grid.size(); ++i) {
    out.push_back({config.x_grid[i], s.targets[2 * i], s.targets[2 * i + 1]});
  }
  return out;
}

struct ConvergenceRow {
  std::size_t m = 0;
  double x = 0.0;
  double epsilon = 0.0;
  std::size_t replications = 0;
  Exceedance theta_hat;
  Exceedance pdf_hat;
  Exceedance cdf_hat;
};

/// Empirical P(|estimate - truth| >= epsilon) for theta_hat, pdf_hat(x) and
/// cdf_hat(x) at each m (one row per m and x). The template's count and
/// epsilons are ignored.
inline std::vector<ConvergenceRow> mc_convergence_scan(const McConfig& config_template, std::span<const std::size_t> m_list,
                                                       double epsilon) {
  if (m_list.empty()) throw std::invalid_argument("mc_convergence_scan: m_list is empty");
  if (!(epsilon > 0.0)) throw std::domain_error("mc_convergence_scan: epsilon must be > 0");
  if (config_template.x_grid.empty()) throw std::invalid_argument("mc_convergence_scan: x_grid is empty");
  for (std::size_t i = 1; i < m_list.size(); ++i) {
    if (!(m_list[i] > m_list[i - 1])) throw std::invalid_argument("mc_convergence_scan: m_list must increase");
  }
  std::vector<ConvergenceRow> rows;
  for (std::size_t m : m_list) {
    McConfig config = config_template;
    config.count = m;
    config.epsilons = {epsilon};
    std::vector<std::string> names{"theta_hat"};
    std::vector<double> truths{config.params.theta()};
    for (double x : config.x_grid) {
      names.push_back("pdf_hat(" + std::to_string(x) + ")");
      truths.push_back(pdf(x, config.params));
      names.push_back("cdf_hat(" + std::to_string(x) + ")");
      truths.push_back(cdf(x, config.params).value());
    }
    const auto sub = static_cast<std::uint32_t>(m);
    const McSummary s =
        detail::run_targets(config, std::move(names), std::move(truths), [&](std::uint64_t r, std::span<double> out) {
          RandomStream rng(config.master_seed, stream_id(StreamDomain::Convergence, sub, r));
          const double theta_hat = mle_from_records(sample_records(m, config.params, rng)).theta_hat;
          const LomaxParams est(theta_hat);
          out[0] = theta_hat;
          for (std::size_t i = 0; i < config.x_grid.size(); ++i) {
            out[1 + 2 * i] = pdf(config.x_grid[i], est);
            out[2 + 2 * i] = cdf(config.x_grid[i], est).value();
          }
        });
    for (std::size_t i = 0; i < config.x_grid.size(); ++i) {
      ConvergenceRow row;
      row.m = m;
      row.x = config.x_grid[i];
      row.epsilon = epsilon;
      row.replications = s.targets[0].replications;
      row.theta_hat = s.targets[0].exceedance[0];
      row.pdf_hat = s.targets[1 + 2 * i].exceedance[0];
      row.cdf_hat = s.targets[2 + 2 * i].exceedance[0];
      rows.push_back(row);
    }
  }
  return rows;
}

struct DistributionCheck {
  std::string name;
  KsResult ks;
};

struct DistributionalReport {
  std::vector<DistributionCheck> checks;
  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.ks.passed; });
  }
};

/// KS checks at the 1% level of the laws behind the estimators, with
/// count = m = n and config.replications draws each:
///   ln(1 + R_m) ~ Gamma(m, theta)
///   sum_i ln(1 + X_i) ~ Gamma(n, theta)
///   ln(1 + X) ~ Exponential(theta)
///   theta_hat from records and from a sample share one law (two-sample).
inline DistributionalReport distributional_check(const McConfig& config, double alpha = 0.01) {
  config.validate();
  const int m = static_cast<int>(config.count);
  const double theta = config.params.theta();
  const double md = static_cast<double>(config.count);
  auto gamma_law = [&](double t) { return gamma_cdf(m, theta, t); };

  const std::vector<double> record_hats = mc_theta_hats(config, Estimator::RecordMLE);
  const std::vector<double> sample_hats = mc_theta_hats(config, Estimator::SampleMLE);
  std::vector<double> record_logs(record_hats.size());
  std::vector<double> sample_sums(sample_hats.size());
  std::transform(record_hats.begin(), record_hats.end(), record_logs.begin(), [&](double v) { return v * md; });
  std::transform(sample_hats.begin(), sample_hats.end(), sample_sums.begin(), [&](double v) { return v * md; });
  const std::vector<double> single_logs = detail::collect(config.replications, config.workers, [&](std::uint64_t r) {
    RandomStream rng(config.master_seed, stream_id(StreamDomain::LogTransform, 0, r));
    return std::log1p(draw(config.params, rng));
  });

  DistributionalReport report;
  report.checks.push_back({"log1p(R_m) ~ Gamma(m, theta)", ks_test(record_logs, gamma_law, alpha)});
  report.checks.push_back({"sum log1p(X_i) ~ Gamma(n, theta)", ks_test(sample_sums, gamma_law, alpha)});
  report.checks.push_back(
      {"log1p(X) ~ Exponential(theta)", ks_test(single_logs, [&](double t) { return exponential_cdf(theta, t); }, alpha)});
  report.checks.push_back({"theta_hat records vs sample", ks_test_two_sample(record_hats, sample_hats, alpha)});
  return report;
}

}  // namespace lomax_records
