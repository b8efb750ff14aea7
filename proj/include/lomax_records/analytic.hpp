#pragma once

// Exact moments of the record-based plug-in estimators.
//
// With T = ln(1 + R_m) ~ Gamma(m, theta), A = ln(1 + x) and y = m A / theta,
// every moment needed here reduces to
//
//   E[T^-k exp(-c m A / T)] = theta^-k G_{m-k}(c y),
//   G_nu(y) = (1/Gamma(m)) * int_0^inf s^(nu-1) exp(-s - y/s) ds
//           = (2/Gamma(m)) y^(nu/2) K_nu(2 sqrt(y)).
//
// For integer nu >= 1 the small-argument expansion of K_nu splits G_nu into
//
//   finite part     sum_{i=0}^{nu-1} Gamma(nu-i) / (Gamma(m) Gamma(i+1)) (-y)^i
//   log remainder   (-1)^nu / Gamma(m) * sum_{k>=0} y^(nu+k) / (k! (nu+k)!)
//                     * [psi(k+1) + psi(nu+k+1) - ln y]
//
// The finite part is the familiar alternating gamma sum. The remainder is
// what a term-by-term integration of exp(-c/t) drops once the powers of t
// stop being integrable. It vanishes at x = 0 and decays like
// y^nu / (nu! (nu-1)!) for y << nu^2, but it is O(1) relative to the
// result for small m. Both parts are returned so callers can see each one.
//
//   E[pdf_hat(x)]   = m / (theta (1+x))       * G_{m-1}(y)
//   E[pdf_hat(x)^2] = (m / (theta (1+x)))^2   * G_{m-2}(2y)
//   E[cdf_hat(x)]   = 1 - G_m(y)
//   E[cdf_hat(x)^2] = 1 - 2 G_m(y) + G_m(2y)

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "lomax_records/extended_real.hpp"
#include "lomax_records/lomax.hpp"
#include "lomax_records/summation.hpp"

namespace lomax_records {

/// Value of a gamma series (or a combination of them) plus diagnostics.
struct SeriesResult {
  double value = 0.0;
  /// Terms in the finite gamma sum(s): m-1 for E[pdf_hat], m for E[cdf_hat],
  /// m-2 for the second moment; combinations report the total.
  int terms = 0;
  /// Largest |term| summed, in the units of value.
  double max_term_magnitude = 0.0;
  /// Set when the rounding-error bound of the alternating sum exceeds about
  /// 1e-8 relative, after any extended-precision retry. For a plain double
  /// sum of similar-sized terms this is the condition |value| < 1e-8 *
  /// max_term_magnitude.
  bool cancellation_flag = false;
  /// The same quantity with the logarithmic remainder left out.
  double finite_part = 0.0;
  /// Terms summed in the logarithmic remainder.
  int remainder_terms = 0;
  /// Estimated relative rounding error of value.
  double relative_error = 0.0;
  /// True when the double evaluation cancelled badly and value came from a
  /// re-evaluation in ExtendedReal.
  bool extended_precision = false;
};

/// Relative error estimate above which a result is flagged. Equivalent to
/// |value| < 1e-8 * max_term for a sum evaluated in double.
inline constexpr double kCancellationRatio = 1e-8;
inline constexpr double kFlagRelativeError = 0x1.0p-53 / kCancellationRatio;

enum class SeriesScale { Single, Double };

/// Inputs of one gamma series: the argument is c * m * ln(1+x) / theta with
/// c = 1 (Single) or 2 (Double).
struct SeriesTermSpec {
  int m;
  double x;
  LomaxParams params;
  SeriesScale scale = SeriesScale::Single;

  double log_excess() const { return std::log1p(x); }
  double argument() const {
    const double y = static_cast<double>(m) * log_excess() / params.theta();
    return scale == SeriesScale::Double ? 2.0 * y : y;
  }
};

namespace detail {

template <class Real>
struct GammaSeriesParts {
  Real finite{};
  Real remainder{};
  Real total{};
  Real max_term{};
  /// sum over terms of (rounding steps behind the term) * |term bound|; times
  /// the unit roundoff this bounds the accumulated rounding error.
  Real weighted_magnitude{};
  int finite_terms = 0;
  int remainder_terms = 0;
  bool converged = true;
};

inline constexpr int kMaxRemainderTerms = 1'000'000;

/// Sums the finite part and logarithmic remainder of G_order(y) (normalised
/// by Gamma(m)) in precision Real. With drop_leading the i = 0 finite term,
/// Gamma(order)/Gamma(m), is left out; callers use this for order == m where
/// that term is exactly 1 and 1 - G is wanted without cancellation.
template <class Real>
GammaSeriesParts<Real> gamma_series_kernel(int order, double y, int m, bool drop_leading) {
  GammaSeriesParts<Real> out;
  CompensatedSum<Real> finite_sum, remainder_sum, total_sum;
  const Real ry = Real(y);
  auto track = [&](Real term, Real bound, double steps) {
    const Real mag = real_abs(term);
    if (mag > out.max_term) out.max_term = mag;
    out.weighted_magnitude += Real(steps) * bound;
  };

  // Gamma(order) / Gamma(m) for order <= m.
  Real t = Real(1);
  for (int j = order; j < m; ++j) t /= Real(j);
  for (int i = 0; i < order; ++i) {
    if (!(drop_leading && i == 0)) {
      finite_sum.add(t);
      total_sum.add(t);
      track(t, real_abs(t), 3.0 * i + (m - order) + 2.0);
    }
    ++out.finite_terms;
    if (i + 1 < order) t *= -ry / (Real(i + 1) * Real(order - i - 1));
  }

  if (y > 0.0) {
    // Leading remainder coefficient y^order / (order! Gamma(m)), as a scaled
    // product so that intermediate powers neither overflow nor underflow.
    Real mant = Real(1);
    long exp2 = 0;
    auto mul = [&](Real f) {
      int e = 0;
      mant = real_frexp(mant * f, &e);
      exp2 += e;
    };
    for (int j = 1; j <= order; ++j) mul(ry / Real(j));
    for (int j = 1; j < m; ++j) mul(Real(1) / Real(j));
    constexpr long kExponentFloor = -20000;
    if (exp2 > kExponentFloor) {
      Real r = real_ldexp(mant, static_cast<int>(std::max<long>(exp2, kExponentFloor)));
      if (r != Real(0)) {
        const Real sign = (order % 2 == 0) ? Real(1) : Real(-1);
        const Real two_gamma = Real(2) * euler_gamma<Real>();
        const Real ln_y = real_log(ry);
        Real h_k = Real(0);
        Real h_nk = Real(0);
        for (int j = 1; j <= order; ++j) h_nk += Real(1) / Real(j);
        for (int k = 0;; ++k) {
          const Real term = sign * r * (h_k + h_nk - two_gamma - ln_y);
          remainder_sum.add(term);
          total_sum.add(term);
          track(term, r * (h_k + h_nk + two_gamma + real_abs(ln_y)), 2.0 * (order + m) + 4.0 * k + 4.0);
          ++out.remainder_terms;
          const double kk = static_cast<double>(k + 1);
          const double denom = kk * (static_cast<double>(order) + kk);
          r *= ry / (Real(k + 1) * Real(order + k + 1));
          h_k += Real(1) / Real(k + 1);
          h_nk += Real(1) / Real(order + k + 1);
          if (denom > y) {
            const Real bound = r * (h_k + h_nk + two_gamma + real_abs(ln_y));
            if (bound <= out.max_term * Real(unit_roundoff<Real>() * 1e-3) || r == Real(0)) break;
          }
          if (k >= kMaxRemainderTerms) {
            out.converged = false;
            break;
          }
        }
      }
    }
  }

  out.finite = finite_sum.value();
  out.remainder = remainder_sum.value();
  out.total = total_sum.value();
  return out;
}

/// A gamma series after the precision decision, in double.
struct EvaluatedSeries {
  double value = 0.0;
  double finite = 0.0;
  double abs_error = 0.0;
  double max_term = 0.0;
  int finite_terms = 0;
  int remainder_terms = 0;
  bool extended = false;
  bool ok = true;
};

template <class Real>
EvaluatedSeries to_evaluated(const GammaSeriesParts<Real>& p, bool extended) {
  EvaluatedSeries e;
  e.value = static_cast<double>(p.total);
  e.finite = static_cast<double>(p.finite);
  e.max_term = static_cast<double>(p.max_term);
  e.abs_error = static_cast<double>(p.weighted_magnitude) * unit_roundoff<Real>() +
                std::fabs(e.value) * unit_roundoff<double>();
  e.finite_terms = p.finite_terms;
  e.remainder_terms = p.remainder_terms;
  e.extended = extended;
  e.ok = p.converged && std::isfinite(e.value) && std::isfinite(e.max_term);
  return e;
}

/// Relative error bound above which a double evaluation is redone in
/// ExtendedReal. Far below the flag threshold, so results that come back
/// from double are good to about 13 digits.
inline constexpr double kRetryRelativeError = 1e-13;

inline bool needs_retry(const EvaluatedSeries& e) {
  return !e.ok || e.abs_error > kRetryRelativeError * std::fabs(e.value);
}

/// G_order(y) (or G_order(y) - 1 with drop_leading), in double when that is
/// accurate enough and in ExtendedReal otherwise.
inline EvaluatedSeries evaluate_gamma_series(int order, double y, int m, bool drop_leading) {
  EvaluatedSeries e = to_evaluated(gamma_series_kernel<double>(order, y, m, drop_leading), false);
  if (needs_retry(e)) {
    e = to_evaluated(gamma_series_kernel<ExtendedReal>(order, y, m, drop_leading), true);
  }
  return e;
}

/// Linear combination of evaluated series and constants with propagated
/// error bounds.
class SeriesCombination {
 public:
  void add_series(double coeff, const EvaluatedSeries& s) {
    value_.add(coeff * s.value);
    finite_.add(coeff * s.finite);
    abs_error_ += std::fabs(coeff) * s.abs_error + std::fabs(coeff * s.value) * unit_roundoff<double>();
    max_term_ = std::max(max_term_, std::fabs(coeff) * s.max_term);
    terms_ += s.finite_terms;
    remainder_terms_ += s.remainder_terms;
    extended_ = extended_ || s.extended;
    ok_ = ok_ && s.ok;
  }

  void add_constant(double v, double abs_error) {
    value_.add(v);
    finite_.add(v);
    abs_error_ += abs_error;
    max_term_ = std::max(max_term_, std::fabs(v));
  }

  SeriesResult result() const {
    SeriesResult r;
    r.value = value_.value() + 0.0;  // no -0.0
    r.finite_part = finite_.value();
    r.terms = terms_;
    r.remainder_terms = remainder_terms_;
    r.max_term_magnitude = max_term_;
    r.extended_precision = extended_;
    const double mag = std::fabs(r.value);
    r.relative_error = mag > 0.0 ? abs_error_ / mag : (abs_error_ > 0.0 ? HUGE_VAL : 0.0);
    r.cancellation_flag = !ok_ || !std::isfinite(r.value) || r.relative_error > kFlagRelativeError;
    return r;
  }

 private:
  CompensatedSum<double> value_;
  CompensatedSum<double> finite_;
  double abs_error_ = 0.0;
  double max_term_ = 0.0;
  int terms_ = 0;
  int remainder_terms_ = 0;
  bool extended_ = false;
  bool ok_ = true;
};

inline void require_inputs(double x, int m, int min_m, const char* what) {
  require_support(x, what);
  if (m < min_m) {
    throw std::invalid_argument(std::string(what) + ": m must be >= " + std::to_string(min_m) + ", got " +
                                std::to_string(m));
  }
}

constexpr double kU = 0x1.0p-53;

}  // namespace detail

/// G_order evaluated at spec.argument(), normalised by Gamma(spec.m). The
/// building block of every moment below; exposed for diagnostics.
inline SeriesResult gamma_series(int order, const SeriesTermSpec& spec) {
  if (order < 1 || order > spec.m) throw std::invalid_argument("gamma_series: need 1 <= order <= m");
  detail::require_support(spec.x, "gamma_series");
  detail::SeriesCombination c;
  c.add_series(1.0, detail::evaluate_gamma_series(order, spec.argument(), spec.m, false));
  return c.result();
}

/// E[pdf_hat(x)] for m records. Requires m >= 2.
inline SeriesResult expected_pdf_hat(double x, const LomaxParams& params, int m) {
  detail::require_inputs(x, m, 2, "expected_pdf_hat");
  const SeriesTermSpec spec{m, x, params, SeriesScale::Single};
  const double scale = m / (params.theta() * (1.0 + x));
  detail::SeriesCombination c;
  c.add_series(scale, detail::evaluate_gamma_series(m - 1, spec.argument(), m, false));
  return c.result();
}

/// E[cdf_hat(x)] for m records. Requires m >= 1.
inline SeriesResult expected_cdf_hat(double x, const LomaxParams& params, int m) {
  detail::require_inputs(x, m, 1, "expected_cdf_hat");
  const SeriesTermSpec spec{m, x, params, SeriesScale::Single};
  detail::SeriesCombination c;
  c.add_series(-1.0, detail::evaluate_gamma_series(m, spec.argument(), m, true));
  return c.result();
}

/// E[pdf_hat(x)^2] for m records. Requires m >= 3.
inline SeriesResult second_moment_pdf_hat(double x, const LomaxParams& params, int m) {
  detail::require_inputs(x, m, 3, "second_moment_pdf_hat");
  const SeriesTermSpec spec{m, x, params, SeriesScale::Double};
  const double scale = m / (params.theta() * (1.0 + x));
  detail::SeriesCombination c;
  c.add_series(scale * scale, detail::evaluate_gamma_series(m - 2, spec.argument(), m, false));
  return c.result();
}

/// E[cdf_hat(x)^2] for m records. Requires m >= 1.
inline SeriesResult second_moment_cdf_hat(double x, const LomaxParams& params, int m) {
  detail::require_inputs(x, m, 1, "second_moment_cdf_hat");
  const double y = SeriesTermSpec{m, x, params}.argument();
  detail::SeriesCombination c;
  c.add_series(-2.0, detail::evaluate_gamma_series(m, y, m, true));
  c.add_series(1.0, detail::evaluate_gamma_series(m, 2.0 * y, m, true));
  return c.result();
}

/// MSE of pdf_hat(x): E[pdf_hat^2] - 2 f E[pdf_hat] + f^2. Requires m >= 3.
inline SeriesResult mse_pdf_hat(double x, const LomaxParams& params, int m) {
  detail::require_inputs(x, m, 3, "mse_pdf_hat");
  const double y = SeriesTermSpec{m, x, params}.argument();
  const double scale = m / (params.theta() * (1.0 + x));
  const double f = pdf(x, params);
  detail::SeriesCombination c;
  c.add_series(scale * scale, detail::evaluate_gamma_series(m - 2, 2.0 * y, m, false));
  c.add_series(-2.0 * f * scale, detail::evaluate_gamma_series(m - 1, y, m, false));
  c.add_constant(f * f, 4.0 * detail::kU * f * f);
  return c.result();
}

/// MSE of cdf_hat(x): E[cdf_hat^2] - 2 F E[cdf_hat] + F^2, arranged as
/// (G_m(2y) - 1) - 2 (1 - F) (G_m(y) - 1) + F^2. Requires m >= 1.
inline SeriesResult mse_cdf_hat(double x, const LomaxParams& params, int m) {
  detail::require_inputs(x, m, 1, "mse_cdf_hat");
  const double y = SeriesTermSpec{m, x, params}.argument();
  const double big_f = cdf(x, params).value();
  const double surv = survival(x, params);
  detail::SeriesCombination c;
  c.add_series(1.0, detail::evaluate_gamma_series(m, 2.0 * y, m, true));
  c.add_series(-2.0 * surv, detail::evaluate_gamma_series(m, y, m, true));
  c.add_constant(big_f * big_f, 4.0 * detail::kU * big_f * big_f);
  return c.result();
}

/// Var[pdf_hat(x)] = E[pdf_hat^2] - E[pdf_hat]^2. Requires m >= 3.
inline SeriesResult variance_pdf_hat(double x, const LomaxParams& params, int m) {
  detail::require_inputs(x, m, 3, "variance_pdf_hat");
  const double y = SeriesTermSpec{m, x, params}.argument();
  const double scale = m / (params.theta() * (1.0 + x));
  const auto first = detail::evaluate_gamma_series(m - 1, y, m, false);
  const double mean = scale * first.value;
  const double mean_err = scale * first.abs_error;
  detail::SeriesCombination c;
  c.add_series(scale * scale, detail::evaluate_gamma_series(m - 2, 2.0 * y, m, false));
  c.add_constant(-mean * mean, 2.0 * std::fabs(mean) * mean_err + 2.0 * detail::kU * mean * mean);
  SeriesResult r = c.result();
  // The constant above was built from the full series; rebuild the finite
  // counterpart from the finite part alone.
  const double finite_mean = scale * first.finite;
  r.finite_part = r.finite_part + mean * mean - finite_mean * finite_mean;
  r.terms += first.finite_terms;
  r.remainder_terms += first.remainder_terms;
  r.extended_precision = r.extended_precision || first.extended;
  r.cancellation_flag = r.cancellation_flag || !first.ok;
  return r;
}

/// Gamma(n-i-1) n^(i+1) / Gamma(n), which tends to 1 as n grows for fixed i.
/// Requires i >= 0 and n - i - 1 >= 1.
inline double gamma_ratio(long long n, long long i) {
  if (i < 0 || n - i - 1 < 1) {
    throw std::domain_error("gamma_ratio: need i >= 0 and n - i - 1 >= 1, got n=" + std::to_string(n) +
                            " i=" + std::to_string(i));
  }
  const double nd = static_cast<double>(n);
  if (i < 4096) {
    // prod_{j=1}^{i+1} n / (n - j)
    double r = 1.0;
    for (long long j = 1; j <= i + 1; ++j) r *= nd / static_cast<double>(n - j);
    return r;
  }
  return std::exp(std::lgamma(static_cast<double>(n - i - 1)) + static_cast<double>(i + 1) * std::log(nd) -
                  std::lgamma(nd));
}

/// (1 - E[cdf_hat]) / E[pdf_hat] - theta (1 + x). The population analogue
/// (1 - F)/f equals theta (1 + x) exactly, so this gap measures how far the
/// estimator expectations are from honouring that identity. Requires m >= 3.
inline double asymptotic_identity_gap(double x, const LomaxParams& params, int m) {
  detail::require_inputs(x, m, 3, "asymptotic_identity_gap");
  const SeriesResult ef = expected_pdf_hat(x, params, m);
  const SeriesResult eF = expected_cdf_hat(x, params, m);
  if (!(ef.value > 0.0) || ef.cancellation_flag) {
    throw std::domain_error("asymptotic_identity_gap: E[pdf_hat] is not reliably positive at x=" +
                            std::to_string(x) + " m=" + std::to_string(m));
  }
  return (1.0 - eF.value) / ef.value - params.theta() * (1.0 + x);
}

/// True iff E[pdf_hat(x)] < 1/theta at every grid point. Flagged points
/// count as failures.
inline bool pdf_hat_upper_bound_check(std::span<const double> x_grid, const LomaxParams& params, int m) {
  if (m < 2) throw std::invalid_argument("pdf_hat_upper_bound_check: m must be >= 2");
  const double bound = 1.0 / params.theta();
  return std::all_of(x_grid.begin(), x_grid.end(), [&](double x) {
    const SeriesResult r = expected_pdf_hat(x, params, m);
    return !r.cancellation_flag && r.value < bound;
  });
}

/// Smallest m in m_list (tested in the given order) for which
/// pdf_hat_upper_bound_check holds, if any.
inline std::optional<int> pdf_hat_upper_bound_onset(std::span<const double> x_grid, const LomaxParams& params,
                                                    std::span<const int> m_list) {
  for (int m : m_list) {
    if (pdf_hat_upper_bound_check(x_grid, params, m)) return m;
  }
  return std::nullopt;
}

}  // namespace lomax_records
