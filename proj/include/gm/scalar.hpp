#pragma once

// Math on a generic Scalar. The headers call these unqualified, so builtin
// floating types resolve to <cmath> and other number types (multiprecision,
// autodiff) to their own overloads by argument-dependent lookup.

#include <cmath>
#include <numbers>
#include <type_traits>

namespace gm {

using std::abs;
using std::acos;
using std::acosh;
using std::asinh;
using std::atan2;
using std::copysign;
using std::cos;
using std::exp;
using std::floor;
using std::fmod;
using std::isfinite;
using std::log;
using std::round;
using std::sin;
using std::sqrt;

template <typename Scalar>
Scalar pi() {
  if constexpr (std::is_floating_point_v<Scalar>) {
    return std::numbers::pi_v<Scalar>;
  } else {
    return acos(Scalar(-1));
  }
}

}  // namespace gm
