#ifndef PULSESWITCH_LINDBLAD_HPP
#define PULSESWITCH_LINDBLAD_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pulseswitch/models.hpp"
#include "pulseswitch/types.hpp"

namespace pulseswitch {

/**
 * Markovian dissipation in the bare basis. Rates are angular and named by
 * (source, target): g10 damps |1> -> |0> (jump operator |0><1|), g21 damps
 * |2> -> |1> (jump operator |1><2|). g11 and g22 are pure dephasing rates:
 * every coherence involving level i decays at g_ii from dephasing alone,
 * which makes the |1>-|0> coherence decay at Gamma_1 = g10/2 + g11.
 * Transitions |2> <-> |0> are forbidden.
 */
struct DissipatorSpec {
  double g10 = 0.0;
  double g11 = 0.0;
  double g21 = 0.0;
  double g22 = 0.0;

  /// Main-text rates: g10, g11, g21, g22 = 2 pi x (1, 0.2, 1.2, 0.2).
  static DissipatorSpec standard();
  /// EIT rates: as standard() but g21 = 2 pi x 0.1, g22 = 2 pi x 0.01.
  static DissipatorSpec eit();

  double gamma1() const { return 0.5 * g10 + g11; }
  double gamma2() const { return 0.5 * g21 + g22; }
  double gamma_total() const { return gamma1() + gamma2(); }

  /// Throws std::invalid_argument on a negative or non-finite rate.
  void validate() const;

  /// Total rate of jumps |from> -> |to> (from == to: dephasing of that level).
  double rate(std::size_t from, std::size_t to) const;

  struct Jump {
    std::size_t from;
    std::size_t to;
    double weight;  // prefactor of L rho L^+ - {L^+ L, rho}/2 with L = |to><from|
  };
  /// Jump operators acting on a dim-level system, zero rates omitted.
  std::vector<Jump> jumps(std::size_t dim) const;
};

/// Hermitian, unit-trace, positive semidefinite state.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kPositivityTol = 1e-8;

  /// Validates the invariants; throws std::invalid_argument on violation.
  explicit DensityMatrix(ComplexMatrix rho);

  /// |level><level|.
  static DensityMatrix pure(std::size_t dim, std::size_t level);
  static DensityMatrix maximally_mixed(std::size_t dim);

  const ComplexMatrix& matrix() const { return rho_; }
  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
  Complex operator()(std::size_t i, std::size_t j) const {
    return rho_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double min_eigenvalue() const;

  /// Skips validation; for states the caller has already checked.
  static DensityMatrix trusted(ComplexMatrix rho);

 private:
  struct Unchecked {};
  DensityMatrix(ComplexMatrix rho, Unchecked) : rho_(std::move(rho)) {}

  ComplexMatrix rho_;
};

/// Superoperator on column-stacked density matrices:
/// vec(A rho B) = (B^T kron A) vec(rho).
struct Liouvillian {
  ComplexMatrix matrix;
  std::size_t dim = 0;       // Hilbert-space dimension
  ComplexMatrix hamiltonian;  // the H it encodes
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  double sample_step = 0.0;
  std::string fingerprint;
  std::optional<double> toggle_time;  // set by switching events
  /// Largest |Tr rho - 1| removed by per-step renormalisation (evolve only).
  double max_trace_correction = 0.0;

  std::size_t size() const { return states.size(); }
};

ComplexVector vectorize(const ComplexMatrix& rho);
ComplexMatrix unvectorize(const ComplexVector& v, std::size_t dim);

/// -i[H, rho] + sum_jumps w (L rho L^+ - {L^+ L, rho}/2).
ComplexMatrix lindblad_rhs(const ComplexMatrix& h, const DissipatorSpec& diss,
                           const ComplexMatrix& rho);
ComplexMatrix lindblad_rhs(const ComplexMatrix& h, const DissipatorSpec& diss,
                           const DensityMatrix& rho);

Liouvillian liouvillian_matrix(const ComplexMatrix& h, const DissipatorSpec& diss);

struct EvolveOptions {
  std::size_t sample_stride = 1;  // store every n-th step
};

/**
 * Classical fourth-order Runge-Kutta on lindblad_rhs with a fixed step.
 *
 * Every envelope edge must land on a step boundary, so H is constant on each
 * step; the stage Hamiltonians are taken from the step interior (which is the
 * left limit at the step's end). After each step rho is re-Hermitized and
 * its trace renormalized. Throws NumericalError("integration unstable") if an
 * eigenvalue drops below -1e-6.
 */
Trajectory evolve(const ModelConfig& cfg, const DissipatorSpec& diss,
                  const DensityMatrix& rho0, double t_end, double dt,
                  EvolveOptions options = {});

/// Throws std::invalid_argument unless dt <= period / 100 and every envelope
/// edge and the period are integer multiples of dt.
void check_step_alignment(const ModelConfig& cfg, double dt);

/**
 * Exact propagation for piecewise-constant drives: on each constant segment
 * vec(rho) <- expm(L dt) vec(rho). Samples are stored at multiples of
 * period / samples_per_period; the result is bit-reproducible.
 */
Trajectory propagate_piecewise(const ModelConfig& cfg, const DissipatorSpec& diss,
                               const DensityMatrix& rho0, std::size_t n_periods,
                               std::size_t samples_per_period = 1);

/// One-period propagator (monodromy superoperator) of the drive.
ComplexMatrix period_propagator(const ModelConfig& cfg, const DissipatorSpec& diss);

/// Kernel of the static Liouvillian, normalised to unit trace. Throws
/// NumericalError("steady state not unique") if rank < dim^2 - 1.
DensityMatrix static_steady_state(const ComplexMatrix& h0, const DissipatorSpec& diss);

struct NessDetection {
  std::size_t period_index = 0;          // k: rho(k tau) ~ rho((k-1) tau)
  std::vector<DensityMatrix> samples;    // samples with t in [(k-1) tau, k tau)
  std::vector<double> times;
};

inline constexpr double kDefaultNessTol = 1e-8;

/// Stroboscopic Cauchy test. Throws NumericalError("not converged").
NessDetection detect_ness(const Trajectory& traj, double period,
                          double tol = kDefaultNessTol);

struct NessOptions {
  double tol = kDefaultNessTol;
  std::size_t samples_per_period = 1000;
  std::size_t max_periods = 100000;
};

/// A converged NESS cycle resolved at uniform stride.
struct NessCycle {
  std::size_t converged_period = 0;
  Trajectory cycle;  // samples over exactly one period, end point excluded
};

/// Runs propagate_piecewise from |0><0| until detect_ness succeeds, then
/// resolves one period at options.samples_per_period.
NessCycle find_ness(const ModelConfig& cfg, const DissipatorSpec& diss,
                    const NessOptions& options = {});

}  // namespace pulseswitch

#endif  // PULSESWITCH_LINDBLAD_HPP
