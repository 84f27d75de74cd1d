#ifndef PULSESWITCH_EXPM_HPP
#define PULSESWITCH_EXPM_HPP

#include "pulseswitch/types.hpp"

namespace pulseswitch {

/// Matrix exponential by scaling and squaring with diagonal Pade
/// approximants of degree 3, 5, 7, 9 or 13 (Higham 2005). Accurate to
/// roughly unit roundoff relative to the 1-norm.
ComplexMatrix expm(const ComplexMatrix& a);

}  // namespace pulseswitch

#endif  // PULSESWITCH_EXPM_HPP
