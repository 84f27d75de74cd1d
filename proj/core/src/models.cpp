#include "pulseswitch/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pulseswitch {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ComplexMatrix detuning_part(const ModelConfig& cfg) {
  const auto n = static_cast<Eigen::Index>(cfg.dim());
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  h(0, 0) = -0.5 * cfg.delta();
  for (Eigen::Index k = 1; k < n; ++k) h(k, k) = 0.5 * cfg.delta();
  return h;
}

void set_coupling(ComplexMatrix& h, Eigen::Index a, Eigen::Index b, Complex v) {
  h(a, b) = v;
  h(b, a) = std::conj(v);
}

bool is_expandable(const SquareWaveEnvelope& env) {
  return env.duty() == 0.5 && env.mismatch() == 0.0 && env.phase_offset() == 0.0;
}

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::TwoLevel:
      return "two_level";
    case ModelKind::ThreeLevelCW:
      return "three_level_cw";
    case ModelKind::ThreeLevelSW:
      return "three_level_sw";
  }
  return "unknown";
}

ModelConfig::ModelConfig(ModelKind kind, double delta, SquareWaveEnvelope probe,
                         ControlField control)
    : kind_(kind), delta_(delta), probe_(probe), control_(std::move(control)) {
  if (!std::isfinite(delta)) throw std::invalid_argument("model: non-finite detuning");
}

ModelConfig ModelConfig::two_level(double delta, SquareWaveEnvelope probe) {
  return {ModelKind::TwoLevel, delta, probe, std::monostate{}};
}

ModelConfig ModelConfig::three_level_cw(double delta, SquareWaveEnvelope probe,
                                        double omega_c) {
  if (!std::isfinite(omega_c))
    throw std::invalid_argument("model: non-finite control amplitude");
  return {ModelKind::ThreeLevelCW, delta, probe, ConstantField{omega_c}};
}

ModelConfig ModelConfig::three_level_sw(double delta, SquareWaveEnvelope probe,
                                        SquareWaveEnvelope control) {
  if (std::abs(control.period() - probe.period()) > 1e-12 * probe.period())
    throw std::invalid_argument("model: control and probe periods differ");
  if (control.mismatch() == 0.0 &&
      std::abs(control.phase_offset() - probe.phase_offset()) > 1e-12 * probe.period())
    throw std::invalid_argument("model: matched control must share the probe phase");
  return {ModelKind::ThreeLevelSW, delta, probe, control};
}

double ModelConfig::control_amplitude() const {
  return std::visit(overloaded{[](std::monostate) { return 0.0; },
                               [](const ConstantField& c) { return c.amplitude; },
                               [](const SquareWaveEnvelope& e) { return e.peak(); }},
                    control_);
}

double ModelConfig::control_value(double t) const {
  return std::visit(
      overloaded{[](std::monostate) { return 0.0; },
                 [](const ConstantField& c) { return c.amplitude; },
                 [t](const SquareWaveEnvelope& e) { return square_wave_value(e, t); }},
      control_);
}

ModelConfig ModelConfig::with_delta(double delta) const {
  return {kind_, delta, probe_, control_};
}

ModelConfig ModelConfig::with_control_amplitude(double omega_c) const {
  ControlField c = std::visit(
      overloaded{[](std::monostate) -> ControlField { return std::monostate{}; },
                 [&](const ConstantField&) -> ControlField {
                   return ConstantField{omega_c};
                 },
                 [&](const SquareWaveEnvelope& e) -> ControlField {
                   return e.with_peak(omega_c);
                 }},
      control_);
  return {kind_, delta_, probe_, c};
}

std::string ModelConfig::fingerprint() const {
  std::ostringstream os;
  os.precision(12);
  os << to_string(kind_) << ";delta=" << delta_ << ";probe=" << probe_.peak() << '@'
     << probe_.period() << '/' << probe_.duty() << '+' << probe_.phase_offset();
  std::visit(overloaded{[](std::monostate) {},
                        [&](const ConstantField& c) { os << ";cw=" << c.amplitude; },
                        [&](const SquareWaveEnvelope& e) {
                          os << ";sw=" << e.peak() << '@' << e.period() << '/'
                             << e.duty() << '+' << e.phase_offset()
                             << ";alpha=" << e.mismatch();
                        }},
             control_);
  return os.str();
}

ComplexMatrix FloquetBlocks::block(long m) const {
  const auto n = static_cast<Eigen::Index>(dim());
  if (m == 0) return h0;
  const long am = m < 0 ? -m : m;
  if (am % 2 == 0 || static_cast<std::size_t>((am + 1) / 2) > odd_blocks.size())
    return ComplexMatrix::Zero(n, n);
  const auto k = static_cast<std::size_t>((am - 1) / 2);
  if (m > 0) return odd_blocks[k];
  if (!negative_odd_blocks.empty()) {
    if (negative_odd_blocks.size() != odd_blocks.size())
      throw std::invalid_argument("negative blocks must match the positive truncation");
    return negative_odd_blocks[k];
  }
  return -odd_blocks[k];
}

ComplexMatrix hamiltonian_at(const ModelConfig& cfg, double t) {
  ComplexMatrix h = detuning_part(cfg);
  set_coupling(h, 0, 1, -0.5 * square_wave_value(cfg.probe(), t));
  if (cfg.dim() == 3) set_coupling(h, 1, 2, -0.5 * cfg.control_value(t));
  return h;
}

FloquetBlocks floquet_blocks(const ModelConfig& cfg, std::size_t n_max) {
  if (!is_expandable(cfg.probe()))
    throw std::invalid_argument("floquet blocks undefined for deformed probe envelope");
  const auto* sw = std::get_if<SquareWaveEnvelope>(&cfg.control());
  if (sw && !is_expandable(*sw))
    throw std::invalid_argument("floquet blocks undefined for deformed control envelope");

  const FourierSeries probe = fourier_coefficients(cfg.probe(), n_max);
  std::optional<FourierSeries> control;
  if (sw) control = fourier_coefficients(*sw, n_max);

  FloquetBlocks out;
  out.omega = cfg.floquet_frequency();
  out.h0 = detuning_part(cfg);
  set_coupling(out.h0, 0, 1, -0.5 * probe.dc);
  if (cfg.dim() == 3)
    set_coupling(out.h0, 1, 2, -0.5 * (control ? control->dc : cfg.control_amplitude()));

  // A term -(c/2) sin(w t) X contributes -(i c / 4) X to the e^{-i w t} block.
  const auto n = static_cast<Eigen::Index>(cfg.dim());
  out.odd_blocks.reserve(n_max);
  for (std::size_t k = 0; k < n_max; ++k) {
    ComplexMatrix b = ComplexMatrix::Zero(n, n);
    const Complex p = -0.25 * kI * probe.harmonics[k].amplitude;
    b(0, 1) = p;
    b(1, 0) = p;
    if (control) {
      const Complex c = -0.25 * kI * control->harmonics[k].amplitude;
      b(1, 2) = c;
      b(2, 1) = c;
    }
    out.odd_blocks.push_back(std::move(b));
  }
  return out;
}

ComplexMatrix average_hamiltonian(const ModelConfig& cfg) {
  const auto& p = cfg.probe();
  const double probe_mean =
      p.peak() * std::min(1.0, p.duty() + 2.0 * p.mismatch() / p.period());
  ComplexMatrix h = detuning_part(cfg);
  set_coupling(h, 0, 1, -0.5 * probe_mean);
  if (cfg.dim() == 3) {
    double c = cfg.control_amplitude();
    if (const auto* sw = std::get_if<SquareWaveEnvelope>(&cfg.control()))
      c *= std::min(1.0, sw->duty() + 2.0 * sw->mismatch() / sw->period());
    set_coupling(h, 1, 2, -0.5 * c);
  }
  return h;
}

std::vector<ConstantSegment> constant_segments(const ModelConfig& cfg) {
  const double tau = cfg.period();
  std::vector<double> cuts{0.0};
  for (double e : cfg.probe().edges()) cuts.push_back(e);
  if (const auto* sw = std::get_if<SquareWaveEnvelope>(&cfg.control()))
    for (double e : sw->edges()) cuts.push_back(e);
  std::sort(cuts.begin(), cuts.end());
  const double eps = 1e-12 * tau;
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [eps](double a, double b) { return std::abs(a - b) <= eps; }),
             cuts.end());
  cuts.push_back(tau);

  std::vector<ConstantSegment> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] - cuts[i] > eps) out.push_back({cuts[i], cuts[i + 1]});
  return out;
}

}  // namespace pulseswitch
