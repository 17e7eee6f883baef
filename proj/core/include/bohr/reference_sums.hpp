#pragma once

#include "bohr/sums.hpp"

namespace bohr::reference {

/// 2^s + 3^s + 2*5^s over the basis (log 2, log 3, log 5), whole plane.
ExponentialSum f1();
/// 2^s + 2*3^s + 5^s over the same basis.
ExponentialSum f2();

}  // namespace bohr::reference
