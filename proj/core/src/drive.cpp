#include "pulseswitch/drive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pulseswitch/types.hpp"

namespace pulseswitch {

namespace {

// Reduces t into [0, period).
double wrap(double t, double period) {
  double x = t - period * std::floor(t / period);
  if (x >= period) x -= period;
  if (x < 0.0) x = 0.0;
  return x;
}

}  // namespace

SquareWaveEnvelope::SquareWaveEnvelope(double peak, double period, double duty,
                                       double phase_offset, double mismatch)
    : peak_(peak),
      period_(period),
      duty_(duty),
      phase_offset_(phase_offset),
      mismatch_(mismatch) {
  if (!(period > 0.0) || !std::isfinite(period))
    throw std::invalid_argument("square wave: period must be positive");
  if (!(duty > 0.0 && duty <= 1.0))
    throw std::invalid_argument("square wave: duty must lie in (0, 1]");
  if (!(std::abs(mismatch) < 0.5 * duty * period))
    throw std::invalid_argument(
        "square wave: |mismatch| must be below duty * period / 2");
  if (!std::isfinite(peak) || !std::isfinite(phase_offset))
    throw std::invalid_argument("square wave: non-finite parameter");
}

double SquareWaveEnvelope::angular_frequency() const {
  return kTwoPi / period_;
}

bool SquareWaveEnvelope::always_on() const {
  return duty_ * period_ + 2.0 * mismatch_ >= period_;
}

std::vector<double> SquareWaveEnvelope::edges() const {
  if (always_on()) return {};
  std::vector<double> out{wrap(phase_offset_ - mismatch_, period_),
                          wrap(phase_offset_ + duty_ * period_ + mismatch_,
                               period_)};
  std::sort(out.begin(), out.end());
  return out;
}

SquareWaveEnvelope SquareWaveEnvelope::with_peak(double peak) const {
  return {peak, period_, duty_, phase_offset_, mismatch_};
}

SquareWaveEnvelope SquareWaveEnvelope::with_mismatch(double mismatch) const {
  return {peak_, period_, duty_, phase_offset_, mismatch};
}

double square_wave_value(const SquareWaveEnvelope& env, double t) {
  if (env.always_on()) return env.peak();
  const double x = wrap(t - env.phase_offset(), env.period());
  const double a = env.mismatch();
  const double end = env.duty() * env.period() + a;
  bool on;
  if (a >= 0.0) {
    // window [-a, end) wraps around the period start
    on = x < end || x >= env.period() - a;
  } else {
    on = x >= -a && x < end;
  }
  return on ? env.peak() : 0.0;
}

FourierSeries fourier_coefficients(const SquareWaveEnvelope& env,
                                   std::size_t n_terms) {
  if (env.duty() != 0.5 || env.mismatch() != 0.0 || env.phase_offset() != 0.0)
    throw std::invalid_argument("series undefined for deformed envelope");
  if (n_terms == 0)
    throw std::invalid_argument("fourier series needs at least one term");

  FourierSeries series;
  series.dc = 0.5 * env.peak();
  series.harmonics.reserve(n_terms);
  const double omega = env.angular_frequency();
  for (std::size_t n = 1; n <= n_terms; ++n) {
    const double odd = static_cast<double>(2 * n - 1);
    series.harmonics.push_back({odd * omega, 2.0 * env.peak() / (odd * kPi)});
  }
  return series;
}

double fourier_partial_sum(const FourierSeries& series, double t) {
  double sum = series.dc;
  for (const auto& h : series.harmonics) sum += h.amplitude * std::sin(h.omega * t);
  return sum;
}

double triangle_series(double phase, std::size_t n_terms) {
  double sum = 0.0;
  for (std::size_t n = 1; n <= n_terms; ++n) {
    const double odd = static_cast<double>(2 * n - 1);
    sum += std::cos(odd * phase) / (odd * odd);
  }
  return sum;
}

}  // namespace pulseswitch
