#pragma once

#include "lomax_records/analytic.hpp"
#include "lomax_records/error.hpp"
#include "lomax_records/estimators.hpp"
#include "lomax_records/lomax.hpp"
#include "lomax_records/montecarlo.hpp"
#include "lomax_records/quadrature.hpp"
#include "lomax_records/random.hpp"
#include "lomax_records/records.hpp"
#include "lomax_records/stats.hpp"
#include "lomax_records/summation.hpp"
#include "lomax_records/verification.hpp"

namespace lomax_records {
inline constexpr const char* kVersion = "0.1.0";
}
