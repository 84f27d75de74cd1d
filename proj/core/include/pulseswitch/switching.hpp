#ifndef PULSESWITCH_SWITCHING_HPP
#define PULSESWITCH_SWITCHING_HPP

#include <span>
#include <string>
#include <vector>

#include "pulseswitch/lindblad.hpp"
#include "pulseswitch/models.hpp"

namespace pulseswitch {

/// r = eta * i * g10 * rho10 / omega_p, t' = 1 - r, R = |r|^2.
/// r is undefined where the probe is off; callers average over the full
/// period through rho10 directly.
struct ReflectionModel {
  double eta = 1.0;
  double g10 = 0.0;
  double omega_p = 0.0;

  Complex reflection(Complex rho10) const;
  Complex transmission(Complex rho10) const { return 1.0 - reflection(rho10); }
  double power(Complex rho10) const { return std::norm(reflection(rho10)); }
  /// Reflected power carried by Im rho10 alone.
  double power_from_imag(double im_rho10) const;
};

struct NessStatistics {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
};

/// Mean and standard deviation of Im rho10 over one NESS period.
NessStatistics ness_statistics(std::span<const DensityMatrix> samples);

struct SwitchingMetrics {
  double mean_im_rho10 = 0.0;  // ON state
  double std_im_rho10 = 0.0;   // ON state
  double r_off = 0.0;
  double r_on = 0.0;
  double ratio_db = 0.0;
  std::string fingerprint;
};

/// Period-mean reflected power computed from Im rho10.
double mean_reflected_power(std::span<const DensityMatrix> samples,
                            const ReflectionModel& model);

/// Runs both configurations to their NESS and reports
/// 10 log10(R_off / R_on). The ON statistics describe the second config.
SwitchingMetrics off_on_ratio(const ModelConfig& off, const ModelConfig& on,
                              const DissipatorSpec& diss, const NessOptions& options = {},
                              double eta = 1.0);

/// Control off (three-level, zero control) from |0> until toggle_time, then
/// the control of `on` is switched on until t_end. toggle_time must be a
/// multiple of the period.
Trajectory switching_event(const ModelConfig& on, const DissipatorSpec& diss,
                           double toggle_time, double t_end, double dt,
                           EvolveOptions options = {});

enum class ControlMode { CW, SW };

std::string to_string(ControlMode mode);

struct SweepRow {
  double omega_c;  // angular
  ControlMode mode;
  SwitchingMetrics metrics;
};

/// OFF/ON metrics against the two-level OFF state for each control amplitude
/// and mode. Rows are ordered by amplitude, then by mode.
std::vector<SweepRow> control_sweep(const ModelConfig& off, const DissipatorSpec& diss,
                                    std::span<const double> omega_cs,
                                    std::span<const ControlMode> modes,
                                    const NessOptions& options = {});

struct RobustnessRow {
  double alpha;
  double omega_c;
  SwitchingMetrics metrics;
};

/// Mismatch scan for a matched SW-control model: the control window is
/// widened (alpha > 0) or narrowed (alpha < 0) at both edges.
std::vector<RobustnessRow> robustness_scan(const ModelConfig& sw_on,
                                           const DissipatorSpec& diss,
                                           std::span<const double> alphas,
                                           std::span<const double> omega_cs,
                                           const NessOptions& options = {});

struct SpectrumPoint {
  double delta;
  double im_rho10;
};

/// Im of the static rho10 versus detuning for a CW-control (or two-level)
/// model, from the period-averaged Hamiltonian.
std::vector<SpectrumPoint> absorption_spectrum(const ModelConfig& cfg,
                                               const DissipatorSpec& diss,
                                               std::span<const double> deltas);

}  // namespace pulseswitch

#endif  // PULSESWITCH_SWITCHING_HPP
