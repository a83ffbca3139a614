#pragma once

#include <stdexcept>
#include <string>

namespace freshopt {

/// Numeric failure (divergent integral, lost root bracket, non-finite value).
/// Distinct from std::domain_error so callers can map it to a separate exit path.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace freshopt
