#ifndef PULSESWITCH_FLOQUET_HPP
#define PULSESWITCH_FLOQUET_HPP

#include <cstddef>

#include "pulseswitch/lindblad.hpp"
#include "pulseswitch/models.hpp"
#include "pulseswitch/types.hpp"

namespace pulseswitch {

/**
 * Leading-order high-frequency description of a NESS:
 *   rho(t) = rho_static + micromotion(t) + floquet_engineering + O(w^-2).
 * The micromotion term is tau-periodic with zero period average.
 */
struct NessDecomposition {
  DensityMatrix rho_static;
  FloquetBlocks blocks;
  ComplexMatrix floquet_engineering;

  ComplexMatrix micromotion(double t) const;
  /// rho_static + micromotion(t) + floquet_engineering, unprojected.
  ComplexMatrix raw(double t) const;
};

/// (1/w) sum_{m != 0} e^{-i m w t} / m [H_m, rho].
ComplexMatrix micromotion_part(const FloquetBlocks& blocks, const DensityMatrix& rho,
                               double t);

struct EffectiveHamiltonian {
  ComplexMatrix h_eff;
  ComplexMatrix correction;  // (1/2) sum_{n>0} [H_{-n}, H_n] / n
};

EffectiveHamiltonian effective_hamiltonian(const FloquetBlocks& blocks);

/**
 * Static shift of the NESS caused by the effective-Hamiltonian correction.
 * In the H0 eigenbasis (energies ascending) the k != l element is
 *   <k|dH|l> (p_k - p_l) / (E_k - E_l - i g_kl),   g_kl = (out_k + out_l) / 2,
 * where out_k sums every rate leaving index k (dephasing included). Rates are
 * keyed by index, i.e. eigenbasis index k inherits the rates of bare level k.
 * Throws NumericalError("resonant degeneracy") when E_k == E_l and the
 * numerator does not vanish.
 */
ComplexMatrix floquet_engineering_part(const ComplexMatrix& h0,
                                       const ComplexMatrix& correction,
                                       const DensityMatrix& rho_static,
                                       const DissipatorSpec& diss);

NessDecomposition decompose_ness(const ModelConfig& cfg, const DissipatorSpec& diss,
                                 std::size_t n_max = kDefaultFourierTerms);

/// Leading-order NESS at time t. Negative eigenvalues down to -1e-8 are
/// clipped to zero and the trace restored.
DensityMatrix ness_leading_order(const ModelConfig& cfg, const DissipatorSpec& diss,
                                 double t, std::size_t n_max = kDefaultFourierTerms);
DensityMatrix ness_leading_order(const NessDecomposition& decomposition, double t);

// Closed forms. All arguments angular. omega_p is the square-wave peak; the
// static problem couples |0>-|1> with omega_p / 4.

struct TwoLevelSteadyState {
  double rho11;
  Complex rho10;
  Complex rho01;
};

/// Steady state of the averaged two-level Bloch equations at detuning delta.
/// Requires g10 > 0.
TwoLevelSteadyState two_level_closed_form(double delta, double omega_p,
                                          const DissipatorSpec& diss);

/// rho_10(t) of the two-level NESS on resonance, to first order in 1/w.
Complex two_level_ness_rho10(double omega_p, const DissipatorSpec& diss, double omega,
                             double t, std::size_t n_terms = kDefaultFourierTerms);

struct CwThreeLevelSteadyState {
  Complex rho10;
  Complex rho21;
  Complex rho20;
  double rho11;
  double rho22;
  bool weak_probe;  // omega_p <= omega_c / 10, where the forms are trustworthy
};

/// First-order (in omega_p) steady state with a resonant CW control; the
/// static problem couples |1>-|2> with omega_c / 2.
CwThreeLevelSteadyState cw_three_level_closed_form(double omega_p, double omega_c,
                                                   const DissipatorSpec& diss);

/// rho_10(t) of the CW-control NESS on resonance, to first order in 1/w.
Complex cw_ness_rho10(double omega_p, double omega_c, const DissipatorSpec& diss,
                      double omega, double t, std::size_t n_terms = kDefaultFourierTerms);

/// Micromotion of rho_10 under SW control, given the numeric static state.
Complex sw_micromotion_rho10(const DensityMatrix& rho_static, double omega_p,
                             double omega_c, double omega, double t,
                             std::size_t n_terms = kDefaultFourierTerms);

}  // namespace pulseswitch

#endif  // PULSESWITCH_FLOQUET_HPP
