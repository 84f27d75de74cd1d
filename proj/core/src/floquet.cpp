#include "pulseswitch/floquet.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace pulseswitch {

namespace {

using Index = Eigen::Index;

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

}  // namespace

ComplexMatrix micromotion_part(const FloquetBlocks& blocks, const DensityMatrix& rho,
                               double t) {
  const auto n = static_cast<Index>(blocks.dim());
  if (rho.dim() != blocks.dim()) throw std::invalid_argument("micromotion: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  const long m_max = 2 * static_cast<long>(blocks.n_max()) - 1;
  for (long m = 1; m <= m_max; m += 2) {
    const double md = static_cast<double>(m);
    const Complex plus = std::exp(-kI * (md * blocks.omega * t)) / md;
    const Complex minus = std::exp(kI * (md * blocks.omega * t)) / -md;
    out += plus * commutator(blocks.block(m), rho.matrix()) +
           minus * commutator(blocks.block(-m), rho.matrix());
  }
  return out / blocks.omega;
}

EffectiveHamiltonian effective_hamiltonian(const FloquetBlocks& blocks) {
  const auto n = static_cast<Index>(blocks.dim());
  ComplexMatrix correction = ComplexMatrix::Zero(n, n);
  const long m_max = 2 * static_cast<long>(blocks.n_max()) - 1;
  for (long m = 1; m <= m_max; m += 2)
    correction += commutator(blocks.block(-m), blocks.block(m)) / static_cast<double>(m);
  correction *= 0.5;
  return {blocks.h0 + correction, correction};
}

ComplexMatrix floquet_engineering_part(const ComplexMatrix& h0,
                                       const ComplexMatrix& correction,
                                       const DensityMatrix& rho_static,
                                       const DissipatorSpec& diss) {
  const std::size_t dim = rho_static.dim();
  const auto n = static_cast<Index>(dim);
  if (h0.rows() != n || correction.rows() != n)
    throw std::invalid_argument("floquet engineering: dimension mismatch");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h0);
  const Eigen::VectorXd& energy = es.eigenvalues();
  const ComplexMatrix& basis = es.eigenvectors();
  const ComplexMatrix dh = basis.adjoint() * correction * basis;
  const ComplexMatrix rho_eig = basis.adjoint() * rho_static.matrix() * basis;

  std::vector<double> out_rate(dim, 0.0);
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t j = 0; j < dim; ++j) out_rate[k] += diss.rate(k, j);

  const double scale = std::max(1.0, energy.cwiseAbs().maxCoeff());
  ComplexMatrix sigma = ComplexMatrix::Zero(n, n);
  for (Index k = 0; k < n; ++k)
    for (Index l = 0; l < n; ++l) {
      if (k == l) continue;
      const Complex numerator = dh(k, l) * (rho_eig(k, k).real() - rho_eig(l, l).real());
      if (numerator == Complex{0.0, 0.0}) continue;
      const double gap = energy(k) - energy(l);
      if (std::abs(gap) <= 1e-12 * scale) throw NumericalError("resonant degeneracy");
      const double g = 0.5 * (out_rate[static_cast<std::size_t>(k)] +
                              out_rate[static_cast<std::size_t>(l)]);
      sigma(k, l) = numerator / Complex{gap, -g};
    }
  return basis * sigma * basis.adjoint();
}

ComplexMatrix NessDecomposition::micromotion(double t) const {
  return micromotion_part(blocks, rho_static, t);
}

ComplexMatrix NessDecomposition::raw(double t) const {
  return rho_static.matrix() + micromotion(t) + floquet_engineering;
}

NessDecomposition decompose_ness(const ModelConfig& cfg, const DissipatorSpec& diss,
                                 std::size_t n_max) {
  FloquetBlocks blocks = floquet_blocks(cfg, n_max);
  DensityMatrix rho_static = static_steady_state(blocks.h0, diss);
  const EffectiveHamiltonian eff = effective_hamiltonian(blocks);
  ComplexMatrix fe = floquet_engineering_part(blocks.h0, eff.correction, rho_static, diss);
  return {std::move(rho_static), std::move(blocks), std::move(fe)};
}

DensityMatrix ness_leading_order(const NessDecomposition& decomposition, double t) {
  ComplexMatrix rho = decomposition.raw(t);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
  Eigen::VectorXd values = es.eigenvalues();
  if (values.minCoeff() < -DensityMatrix::kPositivityTol)
    throw NumericalError("leading-order state not positive");
  if (values.minCoeff() < 0.0) {
    values = values.cwiseMax(0.0);
    rho = es.eigenvectors() * values.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  }
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

DensityMatrix ness_leading_order(const ModelConfig& cfg, const DissipatorSpec& diss,
                                 double t, std::size_t n_max) {
  return ness_leading_order(decompose_ness(cfg, diss, n_max), t);
}

// ---------------------------------------------------------------------------

TwoLevelSteadyState two_level_closed_form(double delta, double omega_p,
                                          const DissipatorSpec& diss) {
  diss.validate();
  if (!(diss.g10 > 0.0)) throw std::invalid_argument("two-level closed form needs g10 > 0");
  const double g1 = diss.gamma1();
  const double g10 = diss.g10;
  const double p2 = omega_p * omega_p;
  const double rho11 =
      0.5 * p2 * g1 / (4.0 * g10 * delta * delta + 4.0 * g1 * g1 * g10 + p2 * g1);
  const double den = 4.0 * delta * delta + 4.0 * g1 * g1 + p2 * g1 / g10;
  const Complex rho10 = Complex{delta, g1} * omega_p / den;
  return {rho11, rho10, std::conj(rho10)};
}

Complex two_level_ness_rho10(double omega_p, const DissipatorSpec& diss, double omega,
                             double t, std::size_t n_terms) {
  const double g1 = diss.gamma1();
  const double g10 = diss.g10;
  const double p2 = omega_p * omega_p;
  const Complex mean = kI * g1 * omega_p / (4.0 * g1 * g1 + p2 * g1 / g10);
  const double amplitude = 4.0 * g1 * g10 * omega_p / (kPi * omega * (4.0 * g1 * g10 + p2));
  return mean - kI * amplitude * triangle_series(omega * t, n_terms);
}

CwThreeLevelSteadyState cw_three_level_closed_form(double omega_p, double omega_c,
                                                   const DissipatorSpec& diss) {
  diss.validate();
  if (!(diss.g10 > 0.0) || !(diss.g21 > 0.0))
    throw std::invalid_argument("CW closed form needs g10 > 0 and g21 > 0");
  const double g1 = diss.gamma1();
  const double g2 = diss.gamma2();
  const double g = diss.gamma_total();
  const double p = omega_p;
  const double c = omega_c;
  const double d = g1 * g2 + 0.25 * c * c;

  CwThreeLevelSteadyState s{};
  s.rho10 = kI * p * g2 / (4.0 * g1 * g2 + c * c);
  // second-order populations solve the same rate equations; 2*g21*g couples rho21 back
  const double relax = c * c + 2.0 * diss.g21 * g;
  s.rho20 = Complex{-c * p / 8.0 / d, 0.0};
  s.rho11 = p * p * g2 / (8.0 * diss.g10 * d);
  const double feed = diss.g10 + 2.0 * g2;
  s.rho21 = kI * c * p * p * feed * diss.g21 / (16.0 * diss.g10 * d * relax);
  s.rho22 = p * p * c * c * feed / (16.0 * diss.g10 * d * relax);
  s.weak_probe = std::abs(omega_p) <= 0.1 * std::abs(omega_c);
  return s;
}

Complex cw_ness_rho10(double omega_p, double omega_c, const DissipatorSpec& diss,
                      double omega, double t, std::size_t n_terms) {
  const CwThreeLevelSteadyState s = cw_three_level_closed_form(omega_p, omega_c, diss);
  const double depletion = 2.0 * s.rho11 + s.rho22;
  const Complex mean = s.rho10;
  return mean - (1.0 - depletion) * kI * omega_p / (kPi * omega) * triangle_series(omega * t, n_terms);
}

Complex sw_micromotion_rho10(const DensityMatrix& rho_static, double omega_p,
                             double omega_c, double omega, double t, std::size_t n_terms) {
  if (rho_static.dim() != 3) throw std::invalid_argument("SW micromotion needs a three-level state");
  const Complex weight =
      (rho_static(1, 1) - rho_static(0, 0)) * omega_p - omega_c * rho_static(2, 0);
  return kI * weight / (kPi * omega) * triangle_series(omega * t, n_terms);
}

}  // namespace pulseswitch
