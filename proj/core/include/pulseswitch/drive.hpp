#ifndef PULSESWITCH_DRIVE_HPP
#define PULSESWITCH_DRIVE_HPP

#include <cstddef>
#include <vector>

namespace pulseswitch {

/// Default truncation for square-wave Fourier series and the triangle sums
/// derived from them.
inline constexpr std::size_t kDefaultFourierTerms = 500;

/**
 * Two-valued periodic amplitude envelope.
 *
 * One period contains a single on-window [-mismatch, duty * period + mismatch)
 * measured from phase_offset. A positive mismatch widens the window at both
 * edges, a negative one narrows it. The window is left-closed and right-open.
 * Amplitudes are angular; times are in the simulation time unit.
 */
class SquareWaveEnvelope {
 public:
  SquareWaveEnvelope(double peak, double period, double duty = 0.5,
                     double phase_offset = 0.0, double mismatch = 0.0);

  double peak() const { return peak_; }
  double period() const { return period_; }
  double duty() const { return duty_; }
  double phase_offset() const { return phase_offset_; }
  double mismatch() const { return mismatch_; }

  /// Floquet angular frequency 2 pi / period.
  double angular_frequency() const;

  /// True when the on-window covers the whole period.
  bool always_on() const;

  /// Instants in [0, period) where the envelope switches, sorted.
  std::vector<double> edges() const;

  SquareWaveEnvelope with_peak(double peak) const;
  SquareWaveEnvelope with_mismatch(double mismatch) const;

 private:
  double peak_;
  double period_;
  double duty_;
  double phase_offset_;
  double mismatch_;
};

struct Harmonic {
  double omega;      // angular frequency of sin(omega t)
  double amplitude;  // angular amplitude
};

/// dc + sum_n amplitude_n sin(omega_n t).
struct FourierSeries {
  double dc = 0.0;
  std::vector<Harmonic> harmonics;

  std::size_t n_terms() const { return harmonics.size(); }
};

/// Envelope value at time t: exactly peak() inside the on-window, else 0.
double square_wave_value(const SquareWaveEnvelope& env, double t);

/// Odd-harmonic sine series of an undeformed 50%-duty envelope.
/// Throws std::invalid_argument for any other envelope or n_terms == 0.
FourierSeries fourier_coefficients(const SquareWaveEnvelope& env,
                                   std::size_t n_terms = kDefaultFourierTerms);

double fourier_partial_sum(const FourierSeries& series, double t);

/// sum_{n=1..n_terms} cos((2n-1) phase) / (2n-1)^2.
/// This is the triangle wave shared by every micromotion formula; its
/// extremes are +-pi^2/8 at phase 0 and pi.
double triangle_series(double phase, std::size_t n_terms = kDefaultFourierTerms);

}  // namespace pulseswitch

#endif  // PULSESWITCH_DRIVE_HPP
