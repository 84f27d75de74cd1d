#ifndef PULSESWITCH_MODELS_HPP
#define PULSESWITCH_MODELS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pulseswitch/drive.hpp"
#include "pulseswitch/types.hpp"

namespace pulseswitch {

// Basis order is (|0>, |1>, |2>) everywhere. The probe couples |0>-|1>, the
// control couples |1>-|2> on resonance.

enum class ModelKind { TwoLevel, ThreeLevelCW, ThreeLevelSW };

std::string to_string(ModelKind kind);

/// Constant (continuous-wave) field amplitude, angular.
struct ConstantField {
  double amplitude = 0.0;
};

using ControlField =
    std::variant<std::monostate, ConstantField, SquareWaveEnvelope>;

/// Rotating-frame model description. Frequencies are angular.
class ModelConfig {
 public:
  static ModelConfig two_level(double delta, SquareWaveEnvelope probe);
  static ModelConfig three_level_cw(double delta, SquareWaveEnvelope probe,
                                    double omega_c);
  static ModelConfig three_level_sw(double delta, SquareWaveEnvelope probe,
                                    SquareWaveEnvelope control);

  ModelKind kind() const { return kind_; }
  std::size_t dim() const { return kind_ == ModelKind::TwoLevel ? 2 : 3; }
  double delta() const { return delta_; }
  const SquareWaveEnvelope& probe() const { return probe_; }
  const ControlField& control() const { return control_; }
  double period() const { return probe_.period(); }
  double floquet_frequency() const { return probe_.angular_frequency(); }

  /// Peak (SW) or constant (CW) control amplitude; 0 for the two-level model.
  double control_amplitude() const;
  double control_value(double t) const;

  ModelConfig with_delta(double delta) const;
  /// Same model with a different control amplitude (ignored for TwoLevel).
  ModelConfig with_control_amplitude(double omega_c) const;

  /// Compact, stable textual identity used to tag derived data.
  std::string fingerprint() const;

 private:
  ModelConfig(ModelKind kind, double delta, SquareWaveEnvelope probe,
              ControlField control);

  ModelKind kind_;
  double delta_;
  SquareWaveEnvelope probe_;
  ControlField control_;
};

/**
 * Fourier blocks of a time-periodic Hamiltonian H(t) = sum_m H_m e^{-i m w t}.
 *
 * Only the odd blocks H_1, H_3, ... are stored; even blocks vanish for a
 * 50%-duty square wave. Negative blocks default to H_{-m} = -H_m unless
 * negative_odd_blocks is filled (same layout as odd_blocks).
 */
struct FloquetBlocks {
  ComplexMatrix h0;
  std::vector<ComplexMatrix> odd_blocks;  // odd_blocks[n-1] holds H_{2n-1}
  std::vector<ComplexMatrix> negative_odd_blocks;
  double omega = 0.0;                     // Floquet angular frequency

  std::size_t n_max() const { return odd_blocks.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(h0.rows()); }
  /// H_m for any integer m within the stored truncation, zero otherwise.
  ComplexMatrix block(long m) const;
};

ComplexMatrix hamiltonian_at(const ModelConfig& cfg, double t);

/// Throws std::invalid_argument when an expanded envelope is deformed
/// (mismatch, duty != 0.5, phase offset) since its blocks are not defined.
FloquetBlocks floquet_blocks(const ModelConfig& cfg,
                             std::size_t n_max = kDefaultFourierTerms);

/// Period-averaged Hamiltonian (H_0). Defined for every envelope shape.
ComplexMatrix average_hamiltonian(const ModelConfig& cfg);

/// Half-open interval [begin, end) inside one period on which H is constant.
struct ConstantSegment {
  double begin;
  double end;
};

/// Partition of [0, period) into maximal constant-Hamiltonian segments.
std::vector<ConstantSegment> constant_segments(const ModelConfig& cfg);

}  // namespace pulseswitch

#endif  // PULSESWITCH_MODELS_HPP
