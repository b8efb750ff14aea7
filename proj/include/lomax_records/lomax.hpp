#pragma once

// Lomax distribution in the single-parameter form
//
//   f(x; theta) = (1/theta) (1 + x)^-(1/theta + 1),   F(x; theta) = 1 - (1 + x)^(-1/theta),
//
// on x >= 0. Powers of (1 + x) are evaluated as exp(c * log1p(x)) so that
// small x keeps full relative precision.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "lomax_records/random.hpp"

namespace lomax_records {

class LomaxParams {
 public:
  explicit LomaxParams(double theta) : theta_(theta) {
    if (!(theta > 0.0) || !std::isfinite(theta)) {
      throw std::domain_error("Lomax theta must be finite and > 0, got " + std::to_string(theta));
    }
  }

  double theta() const noexcept { return theta_; }

  friend bool operator==(const LomaxParams&, const LomaxParams&) = default;

 private:
  double theta_;
};

/// A real number in [0, 1].
class Probability {
 public:
  explicit Probability(double p) : p_(p) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::domain_error("probability must lie in [0, 1], got " + std::to_string(p));
    }
  }

  double value() const noexcept { return p_; }

  friend bool operator==(const Probability&, const Probability&) = default;

 private:
  double p_;
};

namespace detail {

inline void require_support(double x, const char* what) {
  if (!(x >= 0.0)) {
    throw std::domain_error(std::string(what) + ": x must be >= 0, got " + std::to_string(x));
  }
}

}  // namespace detail

inline double pdf(double x, const LomaxParams& params) {
  detail::require_support(x, "pdf");
  const double inv = 1.0 / params.theta();
  return inv * std::exp(-(inv + 1.0) * std::log1p(x));
}

/// 1 - F(x) = (1 + x)^(-1/theta), computed without going through F.
inline double survival(double x, const LomaxParams& params) {
  detail::require_support(x, "survival");
  return std::exp(-std::log1p(x) / params.theta());
}

inline Probability cdf(double x, const LomaxParams& params) {
  detail::require_support(x, "cdf");
  return Probability(-std::expm1(-std::log1p(x) / params.theta()));
}

/// Inverse of cdf on [0, 1). p = 1 maps to infinity and is rejected.
inline double quantile(Probability p, const LomaxParams& params) {
  if (!(p.value() < 1.0)) {
    throw std::domain_error("quantile: p must be < 1");
  }
  return std::expm1(-params.theta() * std::log1p(-p.value()));
}

/// One inverse-transform draw.
template <UniformSource Rng>
double draw(const LomaxParams& params, Rng& rng) {
  return quantile(Probability(rng.uniform01()), params);
}

/// n independent draws, each quantile(U) with U uniform on [0, 1).
template <UniformSource Rng>
std::vector<double> sample(std::size_t n, const LomaxParams& params, Rng& rng) {
  if (n == 0) throw std::invalid_argument("sample: n must be >= 1");
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(draw(params, rng));
  return out;
}

}  // namespace lomax_records
