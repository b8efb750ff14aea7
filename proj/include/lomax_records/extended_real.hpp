#pragma once

// Minimal math shims so the series kernels can be instantiated with double
// and with a wider type. The wider type is __float128 when libquadmath is
// available and long double otherwise.

#include <cmath>

#if defined(LOMAX_RECORDS_HAVE_FLOAT128)
#include <quadmath.h>
#endif

namespace lomax_records {

#if defined(LOMAX_RECORDS_HAVE_FLOAT128)
using ExtendedReal = __float128;
#else
using ExtendedReal = long double;
#endif

namespace detail {

inline double real_abs(double v) { return std::fabs(v); }
inline double real_log(double v) { return std::log(v); }
inline double real_frexp(double v, int* e) { return std::frexp(v, e); }
inline double real_ldexp(double v, int e) { return std::ldexp(v, e); }

inline long double real_abs(long double v) { return std::fabs(v); }
inline long double real_log(long double v) { return std::log(v); }
inline long double real_frexp(long double v, int* e) { return std::frexp(v, e); }
inline long double real_ldexp(long double v, int e) { return std::ldexp(v, e); }

#if defined(LOMAX_RECORDS_HAVE_FLOAT128)
inline __float128 real_abs(__float128 v) { return fabsq(v); }
inline __float128 real_log(__float128 v) { return logq(v); }
inline __float128 real_frexp(__float128 v, int* e) { return frexpq(v, e); }
inline __float128 real_ldexp(__float128 v, int e) { return ldexpq(v, e); }
#endif

template <class Real>
inline bool real_isfinite(Real v) {
  return v - v == Real{0};
}

/// Unit roundoff of the type.
template <class Real>
constexpr double unit_roundoff();
template <>
constexpr double unit_roundoff<double>() { return 0x1.0p-53; }
template <>
constexpr double unit_roundoff<long double>() { return 0x1.0p-64; }
#if defined(LOMAX_RECORDS_HAVE_FLOAT128)
template <>
constexpr double unit_roundoff<__float128>() { return 0x1.0p-113; }
#endif

/// Euler-Mascheroni constant, split so that the wide type gets every bit.
template <class Real>
inline Real euler_gamma() {
  return Real{0.5772156649015329} + Real{-4.942915152430645e-18};
}

}  // namespace detail
}  // namespace lomax_records
