#pragma once

#include <stdexcept>
#include <string>

namespace lomax_records {

/// An estimate fell outside the parameter space (e.g. an all-zero sample).
class DegenerateEstimate : public std::runtime_error {
 public:
  explicit DegenerateEstimate(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lomax_records
