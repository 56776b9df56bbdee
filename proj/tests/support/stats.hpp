#pragma once

#include <cmath>
#include <cstddef>

namespace tagwm::testing {

/// Three standard deviations of a binomial proportion.
inline double binomial_3sigma(double p, std::size_t n) {
  return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace tagwm::testing
