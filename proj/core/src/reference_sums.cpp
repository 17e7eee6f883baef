#include "bohr/reference_sums.hpp"

namespace bohr::reference {

namespace {

ExponentialSum over_2_3_5(double c2, double c3, double c5) {
  return ExponentialSum::make(BasisSpec::log_integers({2, 3, 5}),
                              {{Complex(c2, 0.0), ExponentVector{{1, 0, 0}}},
                               {Complex(c3, 0.0), ExponentVector{{0, 1, 0}}},
                               {Complex(c5, 0.0), ExponentVector{{0, 0, 1}}}},
                              Strip::whole_plane());
}

}  // namespace

ExponentialSum f1() { return over_2_3_5(1.0, 1.0, 2.0); }
ExponentialSum f2() { return over_2_3_5(1.0, 2.0, 1.0); }

}  // namespace bohr::reference
