#ifndef PULSESWITCH_TEST_FIXTURES_HPP
#define PULSESWITCH_TEST_FIXTURES_HPP

#include <random>

#include "pulseswitch/floquet.hpp"
#include "pulseswitch/switching.hpp"

namespace fixtures {

using namespace pulseswitch;

inline constexpr double kTau = 0.01;

inline SquareWaveEnvelope probe(double cyclic_peak = 0.5, double tau = kTau) {
  return SquareWaveEnvelope(angular(cyclic_peak), tau);
}

inline ModelConfig two_level(double tau = kTau) {
  return ModelConfig::two_level(0.0, probe(0.5, tau));
}

inline ModelConfig cw(double cyclic_omega_c, double tau = kTau) {
  return ModelConfig::three_level_cw(0.0, probe(0.5, tau), angular(cyclic_omega_c));
}

inline ModelConfig sw(double cyclic_omega_c, double tau = kTau, double alpha = 0.0) {
  return ModelConfig::three_level_sw(
      0.0, probe(0.5, tau),
      SquareWaveEnvelope(angular(cyclic_omega_c), tau, 0.5, 0.0, alpha));
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline ComplexMatrix random_matrix(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex{dist(rng), dist(rng)};
  return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  ComplexMatrix m = random_matrix(rng, n);
  return 0.5 * (m + m.adjoint());
}

inline DensityMatrix random_state(std::mt19937_64& rng, Eigen::Index n) {
  ComplexMatrix a = random_matrix(rng, n);
  ComplexMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

}  // namespace fixtures

#endif  // PULSESWITCH_TEST_FIXTURES_HPP
