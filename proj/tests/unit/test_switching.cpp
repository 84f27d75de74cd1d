#include <cmath>
#include <vector>

#include "doctest.h"
#include "unit/fixtures.hpp"

using namespace pulseswitch;
using fixtures::max_abs;

namespace {

const DissipatorSpec kMain = DissipatorSpec::standard();
const NessOptions kFast{1e-8, 200, 100000};

DensityMatrix with_im_rho10(double im) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 0.9;
  m(1, 1) = 0.1;
  m(1, 0) = Complex{0.0, im};
  m(0, 1) = Complex{0.0, -im};
  return DensityMatrix(m);
}

}  // namespace

TEST_CASE("reflection and transmission sum to one") {
  const ReflectionModel model{0.8, angular(1.0), angular(0.5)};
  for (Complex rho10 : {Complex{0.0, 0.16}, Complex{0.01, -0.02}, Complex{0.0, 0.0}}) {
    CHECK(std::abs(model.reflection(rho10) + model.transmission(rho10) - 1.0) <= 1e-15);
    CHECK(model.power(rho10) == doctest::Approx(std::norm(model.reflection(rho10))));
  }
  CHECK(model.power_from_imag(0.1) == doctest::Approx(model.power(Complex{0.0, 0.1})));
  CHECK(std::abs(model.reflection(Complex{0.0, 0.25})) == doctest::Approx(0.8 * 2.0 * 0.25));
  CHECK_THROWS_AS(ReflectionModel{}.reflection(Complex{0.0, 0.1}), std::invalid_argument);
}

TEST_CASE("statistics of constant and two-point samples") {
  std::vector<DensityMatrix> same(7, with_im_rho10(0.2));
  NessStatistics s = ness_statistics(same);
  CHECK(s.mean == doctest::Approx(0.2));
  CHECK(s.stddev <= 1e-15);

  std::vector<DensityMatrix> pair{with_im_rho10(0.1), with_im_rho10(0.3)};
  s = ness_statistics(pair);
  CHECK(s.mean == doctest::Approx(0.2));
  CHECK(s.stddev == doctest::Approx(0.1));

  CHECK_THROWS_AS(ness_statistics(std::span<const DensityMatrix>{}), std::invalid_argument);
}

TEST_CASE("two-level NESS statistics follow the triangle micromotion") {
  const NessCycle ness = find_ness(fixtures::two_level(), kMain, {1e-12, 1000, 100000});
  const NessStatistics s = ness_statistics(ness.cycle.states);
  CHECK(s.mean == doctest::Approx(0.35 / 2.135).epsilon(1e-4));
  // a triangle wave of peak-to-peak h has standard deviation h / (2 sqrt 3)
  const double g1 = kMain.gamma1();
  const double p = angular(0.5);
  const double omega = kTwoPi * 100.0;
  const double p2p = kPi * g1 * kMain.g10 * p / (omega * (4.0 * g1 * kMain.g10 + p * p));
  CHECK(s.stddev == doctest::Approx(p2p / (2.0 * std::sqrt(3.0))).epsilon(0.03));
}

TEST_CASE("identical OFF and ON configurations give 0 dB") {
  const SwitchingMetrics m = off_on_ratio(fixtures::two_level(), fixtures::two_level(), kMain, kFast);
  CHECK(std::abs(m.ratio_db) <= 1e-12);
  CHECK(m.r_off == m.r_on);
}

TEST_CASE("ratio does not depend on the reflection efficiency") {
  const SwitchingMetrics a = off_on_ratio(fixtures::two_level(), fixtures::sw(50.0), kMain, kFast, 1.0);
  const SwitchingMetrics b = off_on_ratio(fixtures::two_level(), fixtures::sw(50.0), kMain, kFast, 0.3);
  CHECK(a.ratio_db == doctest::Approx(b.ratio_db).epsilon(1e-12));
  CHECK(b.r_off == doctest::Approx(0.09 * a.r_off));
  CHECK(a.ratio_db > 30.0);
}

TEST_CASE("OFF configuration must be the two-level model") {
  CHECK_THROWS_AS(off_on_ratio(fixtures::cw(10.0), fixtures::sw(10.0), kMain, kFast),
                  std::invalid_argument);
}

TEST_CASE("SW control suppresses the ON-state fluctuation relative to CW") {
  const NessStatistics cw = ness_statistics(find_ness(fixtures::cw(100.0), kMain, kFast).cycle.states);
  const NessStatistics sw = ness_statistics(find_ness(fixtures::sw(100.0), kMain, kFast).cycle.states);
  CHECK(cw.stddev > 5.0 * sw.stddev);
}

TEST_CASE("switching event with toggle at zero equals a plain ON run") {
  const ModelConfig on = fixtures::sw(100.0);
  const Trajectory ev = switching_event(on, kMain, 0.0, 0.05, 1e-5, {100});
  const Trajectory plain = evolve(on, kMain, DensityMatrix::pure(3, 0), 0.05, 1e-5, {100});
  REQUIRE(ev.size() == plain.size());
  for (std::size_t i = 0; i < ev.size(); ++i) {
    CHECK(ev.times[i] == doctest::Approx(plain.times[i]));
    CHECK((ev.states[i].matrix().array() == plain.states[i].matrix().array()).all());
  }
  REQUIRE(ev.toggle_time.has_value());
  CHECK(*ev.toggle_time == 0.0);
}

TEST_CASE("switching event keeps level 2 empty before the toggle") {
  const Trajectory ev = switching_event(fixtures::sw(100.0), kMain, 0.1, 0.2, 1e-5, {100});
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (ev.times[i] <= 0.1 + 1e-12) CHECK(ev.states[i](2, 2).real() == 0.0);
  }
  CHECK(ev.states.back()(2, 2).real() > 0.0);
  CHECK(ev.times.back() == doctest::Approx(0.2));
}

TEST_CASE("switching event validates the toggle time") {
  CHECK_THROWS_AS(switching_event(fixtures::sw(100.0), kMain, 0.0123, 0.1, 1e-5), std::invalid_argument);
  CHECK_THROWS_AS(switching_event(fixtures::sw(100.0), kMain, 0.1, 0.05, 1e-5), std::invalid_argument);
  CHECK_THROWS_AS(switching_event(fixtures::two_level(), kMain, 0.0, 0.05, 1e-5), std::invalid_argument);
}

TEST_CASE("sweep rows cover every control amplitude and mode") {
  const std::vector<double> omegas{angular(50.0), angular(100.0)};
  const std::vector<ControlMode> modes{ControlMode::CW, ControlMode::SW};
  const auto rows = control_sweep(fixtures::two_level(), kMain, omegas, modes, kFast);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].mode == ControlMode::CW);
  CHECK(rows[1].mode == ControlMode::SW);
  CHECK(rows[3].omega_c == omegas[1]);
  const SwitchingMetrics direct = off_on_ratio(fixtures::two_level(), fixtures::sw(100.0), kMain, kFast);
  CHECK(rows[3].metrics.ratio_db == doctest::Approx(direct.ratio_db).epsilon(1e-12));
  CHECK(to_string(ControlMode::SW) == "sw");
}

TEST_CASE("robustness scan at zero mismatch reproduces the undeformed ratio") {
  const std::vector<double> alphas{0.0, 0.2499 * 0.01, -0.2499 * 0.01};
  const std::vector<double> omegas{angular(75.0)};
  const auto rows = robustness_scan(fixtures::sw(75.0), kMain, alphas, omegas, kFast);
  REQUIRE(rows.size() == 3);
  const SwitchingMetrics direct = off_on_ratio(fixtures::two_level(), fixtures::sw(75.0), kMain, kFast);
  CHECK(rows[0].metrics.ratio_db == doctest::Approx(direct.ratio_db).epsilon(1e-12));
  for (const auto& r : rows) CHECK(std::isfinite(r.metrics.ratio_db));
  CHECK_THROWS_AS(robustness_scan(fixtures::cw(75.0), kMain, alphas, omegas, kFast),
                  std::invalid_argument);
}

TEST_CASE("EIT spectrum has a transparency dip at resonance") {
  const DissipatorSpec eit = DissipatorSpec::eit();
  const ModelConfig cfg = ModelConfig::three_level_cw(0.0, fixtures::probe(), angular(5.0));
  std::vector<double> deltas;
  for (int i = -60; i <= 60; ++i) deltas.push_back(angular(0.1 * i));
  const auto spec = absorption_spectrum(cfg, eit, deltas);
  const double centre = spec[60].im_rho10;
  double peak = 0.0;
  for (const auto& p : spec) peak = std::max(peak, p.im_rho10);
  CHECK(centre < spec[59].im_rho10);
  CHECK(centre < spec[61].im_rho10);
  CHECK(centre < 0.5 * peak);
}

TEST_CASE("without control the spectrum is a single resonance") {
  const ModelConfig cfg = ModelConfig::three_level_cw(0.0, fixtures::probe(), 0.0);
  std::vector<double> deltas;
  for (int i = -60; i <= 60; ++i) deltas.push_back(angular(0.1 * i));
  const auto spec = absorption_spectrum(cfg, kMain, deltas);
  for (int i = 0; i < 60; ++i) {
    CHECK(spec[i].im_rho10 < spec[i + 1].im_rho10);
    CHECK(spec[120 - i].im_rho10 < spec[119 - i].im_rho10);
  }
}

TEST_CASE("resonant CW absorption equals the closed form") {
  const std::vector<double> zero{0.0};
  const auto spec = absorption_spectrum(fixtures::cw(50.0), kMain, zero);
  const CwThreeLevelSteadyState s = cw_three_level_closed_form(angular(0.5), angular(50.0), kMain);
  CHECK(spec[0].im_rho10 == doctest::Approx(s.rho10.imag()).epsilon(1e-3));
  CHECK(spec[0].im_rho10 == doctest::Approx(1.599e-4).epsilon(1e-3));
  CHECK_THROWS_AS(absorption_spectrum(fixtures::sw(50.0), kMain, zero), std::invalid_argument);
}
