#include "bohr/image_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bohr {

double ImageCloud::t_of(std::size_t i) const {
  if (ts.empty()) return std::numeric_limits<double>::quiet_NaN();
  return ts.at(i);
}

double ImageCloud::max_modulus() const noexcept {
  double m = 0.0;
  for (const auto& p : points) m = std::max(m, std::abs(p));
  return m;
}

}  // namespace bohr
