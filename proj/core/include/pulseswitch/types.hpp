#ifndef PULSESWITCH_TYPES_HPP
#define PULSESWITCH_TYPES_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pulseswitch {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Converts a cyclic frequency (the "x/(2 pi)" number) to angular units.
constexpr double angular(double cyclic) { return kTwoPi * cyclic; }

/// Converts an angular frequency back to cyclic units.
constexpr double cyclic(double angular_value) { return angular_value / kTwoPi; }

/// Raised when a numerical procedure cannot deliver a valid result
/// (non-convergence, positivity blow-up, singular steady-state problem).
/// Precondition violations use std::invalid_argument instead.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pulseswitch

#endif  // PULSESWITCH_TYPES_HPP
