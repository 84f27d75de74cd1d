#include "pulseswitch/switching.hpp"

#include <cmath>
#include <stdexcept>

namespace pulseswitch {

namespace {

ModelConfig control_off(const ModelConfig& on) {
  return ModelConfig::three_level_cw(on.delta(), on.probe(), 0.0);
}

ModelConfig with_mode(const ModelConfig& off, ControlMode mode, double omega_c) {
  if (mode == ControlMode::CW) return ModelConfig::three_level_cw(off.delta(), off.probe(), omega_c);
  return ModelConfig::three_level_sw(off.delta(), off.probe(), off.probe().with_peak(omega_c));
}

struct OffState {
  double power;
  ReflectionModel model;
};

OffState off_state(const ModelConfig& off, const DissipatorSpec& diss,
                   const NessOptions& options, double eta) {
  if (off.kind() != ModelKind::TwoLevel)
    throw std::invalid_argument("OFF configuration must be the two-level model");
  const ReflectionModel model{eta, diss.g10, off.probe().peak()};
  const NessCycle ness = find_ness(off, diss, options);
  return {mean_reflected_power(ness.cycle.states, model), model};
}

SwitchingMetrics on_metrics(const ModelConfig& on, const DissipatorSpec& diss,
                            const NessOptions& options, const OffState& off) {
  const NessCycle ness = find_ness(on, diss, options);
  const NessStatistics stats = ness_statistics(ness.cycle.states);
  SwitchingMetrics m;
  m.mean_im_rho10 = stats.mean;
  m.std_im_rho10 = stats.stddev;
  m.r_off = off.power;
  m.r_on = mean_reflected_power(ness.cycle.states, off.model);
  m.ratio_db = 10.0 * std::log10(m.r_off / m.r_on);
  m.fingerprint = on.fingerprint();
  return m;
}

}  // namespace

Complex ReflectionModel::reflection(Complex rho10) const {
  if (omega_p == 0.0) throw std::invalid_argument("reflection undefined without probe field");
  return eta * kI * g10 * rho10 / omega_p;
}

double ReflectionModel::power_from_imag(double im_rho10) const {
  return std::norm(reflection(Complex{0.0, im_rho10}));
}

NessStatistics ness_statistics(std::span<const DensityMatrix> samples) {
  if (samples.empty()) throw std::invalid_argument("ness_statistics: empty samples");
  double sum = 0.0;
  for (const auto& s : samples) sum += s(1, 0).imag();
  const double mean = sum / static_cast<double>(samples.size());
  double var = 0.0;
  for (const auto& s : samples) {
    const double d = s(1, 0).imag() - mean;
    var += d * d;
  }
  return {mean, std::sqrt(var / static_cast<double>(samples.size()))};
}

double mean_reflected_power(std::span<const DensityMatrix> samples,
                            const ReflectionModel& model) {
  if (samples.empty()) throw std::invalid_argument("mean_reflected_power: empty samples");
  double sum = 0.0;
  for (const auto& s : samples) sum += model.power_from_imag(s(1, 0).imag());
  return sum / static_cast<double>(samples.size());
}

SwitchingMetrics off_on_ratio(const ModelConfig& off, const ModelConfig& on,
                              const DissipatorSpec& diss, const NessOptions& options,
                              double eta) {
  const OffState off_power = off_state(off, diss, options, eta);
  return on_metrics(on, diss, options, off_power);
}

Trajectory switching_event(const ModelConfig& on, const DissipatorSpec& diss,
                           double toggle_time, double t_end, double dt,
                           EvolveOptions options) {
  if (on.dim() != 3) throw std::invalid_argument("switching event needs a three-level model");
  const double tau = on.period();
  const double k = toggle_time / tau;
  if (toggle_time < 0.0 || std::abs(k - std::round(k)) > 1e-9 * std::max(1.0, k))
    throw std::invalid_argument("toggle time must be a multiple of the period");
  if (!(t_end >= toggle_time)) throw std::invalid_argument("t_end must not precede toggle time");
  const double steps_to_toggle = toggle_time / dt;
  if (std::abs(steps_to_toggle - std::round(steps_to_toggle)) > 1e-6 ||
      std::llround(steps_to_toggle) % static_cast<long long>(options.sample_stride) != 0)
    throw std::invalid_argument("toggle time must fall on a stored sample");

  Trajectory first = evolve(control_off(on), diss, DensityMatrix::pure(3, 0), toggle_time,
                            dt, options);
  // after toggling, time restarts at 0 in the drive's own frame: toggle is a
  // period boundary, so the envelopes are unaffected.
  Trajectory second = evolve(on, diss, first.states.back(), t_end - toggle_time, dt, options);

  Trajectory out = std::move(first);
  out.fingerprint = on.fingerprint() + ";toggle";
  out.toggle_time = toggle_time;
  out.max_trace_correction = std::max(out.max_trace_correction, second.max_trace_correction);
  for (std::size_t i = 1; i < second.size(); ++i) {
    out.times.push_back(toggle_time + second.times[i]);
    out.states.push_back(second.states[i]);
  }
  return out;
}

std::string to_string(ControlMode mode) { return mode == ControlMode::CW ? "cw" : "sw"; }

std::vector<SweepRow> control_sweep(const ModelConfig& off, const DissipatorSpec& diss,
                                    std::span<const double> omega_cs,
                                    std::span<const ControlMode> modes,
                                    const NessOptions& options) {
  const OffState off_power = off_state(off, diss, options, 1.0);
  std::vector<SweepRow> rows;
  rows.reserve(omega_cs.size() * modes.size());
  for (double omega_c : omega_cs)
    for (ControlMode mode : modes)
      rows.push_back({omega_c, mode,
                      on_metrics(with_mode(off, mode, omega_c), diss, options, off_power)});
  return rows;
}

std::vector<RobustnessRow> robustness_scan(const ModelConfig& sw_on,
                                           const DissipatorSpec& diss,
                                           std::span<const double> alphas,
                                           std::span<const double> omega_cs,
                                           const NessOptions& options) {
  const auto* control = std::get_if<SquareWaveEnvelope>(&sw_on.control());
  if (sw_on.kind() != ModelKind::ThreeLevelSW || control == nullptr)
    throw std::invalid_argument("robustness scan needs a square-wave control");
  const ModelConfig off = ModelConfig::two_level(sw_on.delta(), sw_on.probe());
  const OffState off_power = off_state(off, diss, options, 1.0);

  std::vector<RobustnessRow> rows;
  rows.reserve(alphas.size() * omega_cs.size());
  for (double alpha : alphas)
    for (double omega_c : omega_cs) {
      const SquareWaveEnvelope deformed = control->with_peak(omega_c).with_mismatch(alpha);
      const ModelConfig on = ModelConfig::three_level_sw(sw_on.delta(), sw_on.probe(), deformed);
      rows.push_back({alpha, omega_c, on_metrics(on, diss, options, off_power)});
    }
  return rows;
}

std::vector<SpectrumPoint> absorption_spectrum(const ModelConfig& cfg,
                                               const DissipatorSpec& diss,
                                               std::span<const double> deltas) {
  if (cfg.kind() == ModelKind::ThreeLevelSW)
    throw std::invalid_argument("absorption spectrum needs constant fields (CW control)");
  std::vector<SpectrumPoint> out;
  out.reserve(deltas.size());
  for (double delta : deltas) {
    const DensityMatrix rho = static_steady_state(average_hamiltonian(cfg.with_delta(delta)), diss);
    out.push_back({delta, rho(1, 0).imag()});
  }
  return out;
}

}  // namespace pulseswitch
