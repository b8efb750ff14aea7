#pragma once

// Direct numerical integration of E[h(T)] for T ~ Gamma(m, theta), used as an
// oracle that shares nothing with the gamma-series code in analytic.hpp.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string_view>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lomax_records/lomax.hpp"

namespace lomax_records {

enum class PluginMoment { PdfHat, PdfHatSquared, CdfHat, CdfHatSquared };

constexpr std::string_view to_string(PluginMoment g) noexcept {
  switch (g) {
    case PluginMoment::PdfHat: return "pdf_hat";
    case PluginMoment::PdfHatSquared: return "pdf_hat^2";
    case PluginMoment::CdfHat: return "cdf_hat";
    case PluginMoment::CdfHatSquared: return "cdf_hat^2";
  }
  return "?";
}

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  ///< absolute
  bool converged = false;
};

/// E[g] under T ~ Gamma(m, theta), where g is pdf_hat(x), cdf_hat(x) or
/// their squares evaluated at theta_hat = T/m.
///
/// With T = theta z and z = s u / (1 - u), s = max(m - 1, 1), the integral
/// runs over u in (0, 1) and the Gamma(m, 1) mode sits at u = 1/2. The
/// integrand vanishes at both ends (like exp(-c/z) at 0 when x > 0 and like
/// z^(m-1) e^-z at infinity), so adaptive Gauss-Kronrod needs no special
/// end-point handling.
inline QuadratureResult quadrature_oracle(PluginMoment g, double x, const LomaxParams& params, int m,
                                          double rel_tol = 1e-10) {
  if (!(x >= 0.0)) throw std::domain_error("quadrature_oracle: x must be >= 0");
  if (m < 1) throw std::invalid_argument("quadrature_oracle: m must be >= 1");
  const bool needs_pdf_moments = g == PluginMoment::PdfHat || g == PluginMoment::PdfHatSquared;
  if (needs_pdf_moments && m < (g == PluginMoment::PdfHat ? 2 : 3)) {
    throw std::invalid_argument("quadrature_oracle: moment is infinite for this m");
  }

  const double theta = params.theta();
  const double a = std::log1p(x);
  const double md = static_cast<double>(m);
  const double s = std::max(md - 1.0, 1.0);
  const double log_norm = std::lgamma(md);

  auto integrand = [&](double u) -> double {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double z = s * u / (1.0 - u);
    if (!(z > 0.0) || !std::isfinite(z)) return 0.0;
    const double log_jac = std::log(s) - 2.0 * std::log1p(-u);
    const double log_density = (md - 1.0) * std::log(z) - z - log_norm;
    const double rate = md / (theta * z);  // 1 / theta_hat
    switch (g) {
      case PluginMoment::PdfHat:
        return std::exp(log_density + log_jac + std::log(rate) - (rate + 1.0) * a);
      case PluginMoment::PdfHatSquared:
        return std::exp(log_density + log_jac + 2.0 * (std::log(rate) - (rate + 1.0) * a));
      case PluginMoment::CdfHat:
        return std::exp(log_density + log_jac) * -std::expm1(-rate * a);
      case PluginMoment::CdfHatSquared: {
        const double c = -std::expm1(-rate * a);
        return std::exp(log_density + log_jac) * c * c;
      }
    }
    return 0.0;
  };

  double error = 0.0;
  double l1 = 0.0;
  constexpr unsigned kMaxDepth = 25;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, 1.0, kMaxDepth, rel_tol * 1e-2, &error, &l1);
  QuadratureResult r;
  r.value = value;
  r.error_estimate = error;
  r.converged = std::isfinite(value) && error <= rel_tol * std::fabs(value) + 1e-300;
  return r;
}

}  // namespace lomax_records
