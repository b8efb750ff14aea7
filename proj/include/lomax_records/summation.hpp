#pragma once

#include <cmath>
#include <span>

#include "lomax_records/extended_real.hpp"

namespace lomax_records {

/// Neumaier's variant of Kahan summation.
template <class Real>
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;
  constexpr explicit CompensatedSum(Real init) : sum_(init) {}

  constexpr void add(Real v) {
    const Real t = sum_ + v;
    if (detail::real_abs(sum_) >= detail::real_abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  constexpr CompensatedSum& operator+=(Real v) {
    add(v);
    return *this;
  }

  constexpr Real value() const { return sum_ + comp_; }

 private:
  Real sum_{};
  Real comp_{};
};

inline double compensated_sum(std::span<const double> values) {
  CompensatedSum<double> acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

}  // namespace lomax_records
