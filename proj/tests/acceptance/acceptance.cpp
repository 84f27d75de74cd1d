// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "pulseswitch/floquet.hpp"
#include "pulseswitch/switching.hpp"

using namespace pulseswitch;

namespace {

const DissipatorSpec kMain = DissipatorSpec::standard();
constexpr double kTau = 0.01;

struct Outcome {
  bool pass;
  std::string detail;
};

SquareWaveEnvelope probe(double tau = kTau) { return SquareWaveEnvelope(angular(0.5), tau); }

ModelConfig cw(double cyclic_c) { return ModelConfig::three_level_cw(0.0, probe(), angular(cyclic_c)); }

ModelConfig sw(double cyclic_c) {
  return ModelConfig::three_level_sw(0.0, probe(), probe().with_peak(angular(cyclic_c)));
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

// max |Im rho10 numeric - Im rho10 closed form| over one NESS period
double two_level_discrepancy(double tau) {
  const ModelConfig cfg = ModelConfig::two_level(0.0, probe(tau));
  const NessCycle ness = find_ness(cfg, kMain, {1e-13, 1000, 100000});
  double err = 0.0;
  for (std::size_t i = 0; i < ness.cycle.size(); ++i) {
    const double analytic =
        two_level_ness_rho10(angular(0.5), kMain, cfg.floquet_frequency(), ness.cycle.times[i]).imag();
    err = std::max(err, std::abs(ness.cycle.states[i](1, 0).imag() - analytic));
  }
  return err;
}

Outcome criterion1() {
  const double err = two_level_discrepancy(kTau);
  const double bound = 0.01 * 0.35 / 2.135;
  return {err <= bound, fmt("max discrepancy %.4g <= %.4g", err, bound)};
}

Outcome criterion2() {
  double worst = 0.0;
  for (double delta : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
    const ModelConfig cfg = ModelConfig::two_level(angular(delta), probe());
    const DensityMatrix rho = static_steady_state(floquet_blocks(cfg, 1).h0, kMain);
    const TwoLevelSteadyState s = two_level_closed_form(angular(delta), angular(0.5), kMain);
    worst = std::max({worst, std::abs(rho(1, 0) - s.rho10), std::abs(rho(0, 1) - s.rho01),
                      std::abs(rho(1, 1).real() - s.rho11)});
  }
  bool ok = worst <= 1e-10;
  std::string detail = fmt("two-level max residual %.3g; CW residual ratios", worst);
  for (double wc : {10.0, 50.0, 100.0}) {
    std::vector<double> res;
    for (double scale : {1.0, 0.5}) {
      const double p = angular(0.5) * scale;
      const ModelConfig cfg = ModelConfig::three_level_cw(0.0, SquareWaveEnvelope(p, kTau), angular(wc));
      const DensityMatrix rho = static_steady_state(floquet_blocks(cfg, 1).h0, kMain);
      const CwThreeLevelSteadyState s = cw_three_level_closed_form(p, angular(wc), kMain);
      res.push_back(std::max({std::abs(rho(1, 0) - s.rho10) / std::abs(s.rho10),
                              std::abs(rho(2, 0) - s.rho20) / std::abs(s.rho20),
                              std::abs(rho(2, 1) - s.rho21) / std::abs(s.rho21),
                              std::abs(rho(1, 1).real() - s.rho11) / s.rho11,
                              std::abs(rho(2, 2).real() - s.rho22) / s.rho22}));
    }
    const double ratio = res[0] / res[1];
    ok = ok && std::abs(ratio - 4.0) <= 0.8;
    detail += fmt(" %g:%.3f", wc, ratio);
  }
  return {ok, detail};
}

Outcome criterion3() {
  const NessCycle ness = find_ness(ModelConfig::two_level(0.0, probe()), kMain, {1e-13, 1000, 100000});
  const NessStatistics stats = ness_statistics(ness.cycle.states);
  std::vector<double> y;
  for (const auto& s : ness.cycle.states) y.push_back(s(1, 0).imag() - stats.mean);
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  const double p2p = *hi - *lo;
  // triangle shape: minimum at the period start, maximum mid-period, linear in between
  const std::size_t n = y.size();
  const auto i_lo = static_cast<std::size_t>(lo - y.begin());
  const auto i_hi = static_cast<std::size_t>(hi - y.begin());
  double lin = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(n);
    const double tri = (x < 0.5 ? 2.0 * x : 2.0 - 2.0 * x) * p2p + *lo;
    lin = std::max(lin, std::abs(y[i] - tri));
  }
  const bool shape = (i_lo == 0 || i_lo == n - 1) && std::abs(static_cast<double>(i_hi) - n / 2.0) <= 1.0 &&
                     lin <= 0.05 * p2p;
  const bool ok = std::abs(p2p - 3.73e-3) <= 0.05 * 3.73e-3 && shape;
  return {ok, fmt("peak-to-peak %.5g (target 3.73e-3 +- 5%%), max deviation from triangle %.3g", p2p, lin)};
}

Outcome criterion4() {
  const NessOptions opts{1e-10, 1000, 100000};
  const double s_cw = ness_statistics(find_ness(cw(100.0), kMain, opts).cycle.states).stddev;
  const double s_sw = ness_statistics(find_ness(sw(100.0), kMain, opts).cycle.states).stddev;
  return {s_cw >= 5.0 * s_sw, fmt("std CW %.4g, std SW %.4g, factor %.1f", s_cw, s_sw, s_cw / s_sw)};
}

Outcome criterion5() {
  std::vector<double> omegas;
  for (int c = 20; c <= 160; c += 10) omegas.push_back(angular(c));
  const std::vector<ControlMode> modes{ControlMode::CW, ControlMode::SW};
  const auto rows = control_sweep(ModelConfig::two_level(0.0, probe()), kMain, omegas, modes);
  std::vector<double> r_cw, r_sw;
  for (const auto& r : rows) (r.mode == ControlMode::CW ? r_cw : r_sw).push_back(r.metrics.ratio_db);
  bool a = true, b = true;
  std::string fails;
  for (std::size_t i = 0; i < r_cw.size(); ++i) {
    if (!(r_sw[i] > r_cw[i])) {
      a = false;
      fails += fmt(" a@%g(sw %.2f <= cw %.2f)", cyclic(omegas[i]), r_sw[i], r_cw[i]);
    }
    if (i > 0 && r_sw[i] < r_sw[i - 1]) {
      b = false;
      fails += fmt(" b-sw@%g", cyclic(omegas[i]));
    }
    if (i > 0 && r_cw[i] > r_cw[i - 1]) {
      b = false;
      fails += fmt(" b-cw@%g(%.2f > %.2f)", cyclic(omegas[i]), r_cw[i], r_cw[i - 1]);
    }
  }
  const bool c = r_sw.back() >= 55.0 && r_sw.back() <= 75.0;
  std::string detail = fmt("(a) %s (b) %s (c) %s SW@160 = %.2f dB;", a ? "ok" : "FAIL", b ? "ok" : "FAIL",
                           c ? "ok" : "FAIL", r_sw.back());
  detail += fails.empty() ? " no violations" : fails;
  return {a && b && c, detail};
}

Outcome criterion6() {
  const double gamma_cyclic = cyclic(kMain.gamma_total());
  const double settle = 1.5 / gamma_cyclic;
  const double toggle = 1.0;
  const double t_end = toggle + settle + 0.5;
  const double off_mean =
      ness_statistics(find_ness(ModelConfig::two_level(0.0, probe()), kMain).cycle.states).mean;
  bool ok = true;
  std::string detail = fmt("window %.3g time units;", settle);
  for (const ModelConfig& on : {cw(120.0), sw(120.0)}) {
    const double on_mean = ness_statistics(find_ness(on, kMain).cycle.states).mean;
    const double gap = std::abs(off_mean - on_mean);
    const Trajectory ev = switching_event(on, kMain, toggle, t_end, 1e-5, {10});
    double worst = 0.0;
    double first_inside = -1.0;
    for (std::size_t i = 0; i < ev.size(); ++i) {
      if (ev.times[i] < toggle) continue;
      const double dev = std::abs(ev.states[i](1, 0).imag() - on_mean);
      if (ev.times[i] >= toggle + settle - 1e-12) worst = std::max(worst, dev);
    }
    // last time the deviation exceeded the band, relative to the toggle
    for (std::size_t i = ev.size(); i-- > 0;) {
      if (ev.times[i] < toggle) break;
      if (std::abs(ev.states[i](1, 0).imag() - on_mean) >= 0.05 * gap) {
        first_inside = ev.times[i] - toggle;
        break;
      }
    }
    ok = ok && worst < 0.05 * gap;
    detail += fmt(" %s: settles after %.3g (%.0f periods), residual %.3g of gap;",
                  to_string(on.kind()).c_str(), first_inside, first_inside / kTau, worst / gap);
  }
  return {ok, detail};
}

Outcome criterion7() {
  const std::vector<double> alphas{0.0, 0.01 * kTau, -0.01 * kTau};
  const std::vector<double> omegas{angular(50.0), angular(75.0), angular(100.0)};
  const auto rows = robustness_scan(sw(50.0), kMain, alphas, omegas);
  bool ok = true;
  std::string detail;
  for (std::size_t j = 0; j < omegas.size(); ++j) {
    const double base = rows[j].metrics.ratio_db;
    for (std::size_t i = 1; i < alphas.size(); ++i) {
      const double shift = rows[i * omegas.size() + j].metrics.ratio_db - base;
      if (std::abs(shift) > 1.0) ok = false;
      detail += fmt(" %g/%+.2ftau:%+.3fdB", cyclic(omegas[j]), alphas[i] / kTau, shift);
    }
  }
  return {ok, detail};
}

Outcome criterion8() {
  const DissipatorSpec eit = DissipatorSpec::eit();
  std::vector<double> deltas;
  for (int i = -120; i <= 120; ++i) deltas.push_back(angular(0.05 * i));
  const auto with_c = absorption_spectrum(cw(5.0), eit, deltas);
  const auto without = absorption_spectrum(cw(0.0), eit, deltas);
  const std::size_t mid = 120;
  double peak = 0.0;
  for (const auto& p : with_c) peak = std::max(peak, p.im_rho10);
  const bool dip = with_c[mid].im_rho10 < with_c[mid - 1].im_rho10 &&
                   with_c[mid].im_rho10 < with_c[mid + 1].im_rho10 &&
                   with_c[mid].im_rho10 < 0.5 * peak;
  std::size_t maxima = 0;
  for (std::size_t i = 1; i + 1 < without.size(); ++i)
    if (without[i].im_rho10 > without[i - 1].im_rho10 && without[i].im_rho10 > without[i + 1].im_rho10)
      ++maxima;
  const auto top = std::max_element(without.begin(), without.end(),
                                    [](const auto& a, const auto& b) { return a.im_rho10 < b.im_rho10; });
  const bool single = maxima == 1 && top->delta == 0.0;
  return {dip && single, fmt("Im rho10(0) = %.4g, max = %.4g; control-free maxima: %zu", with_c[mid].im_rho10,
                             peak, maxima)};
}

Outcome criterion9() {
  bool ok = true;
  std::string detail;

  // 10^6 RK4 steps
  {
    const Trajectory tr = evolve(sw(100.0), kMain, DensityMatrix::pure(3, 0), 10.0, 1e-5, {1000});
    double herm = 0.0, trace = 0.0, pos = 1.0;
    for (const auto& s : tr.states) {
      herm = std::max(herm, max_abs(s.matrix() - s.matrix().adjoint()));
      trace = std::max(trace, std::abs(s.matrix().trace() - 1.0));
      pos = std::min(pos, s.min_eigenvalue());
    }
    const bool good = herm == 0.0 && trace <= 1e-12 && pos >= -1e-10 && tr.max_trace_correction <= 1e-10;
    ok = ok && good;
    detail += fmt("1e6 steps: trace drift %.2g, min eig %.2g;", tr.max_trace_correction, pos);
  }
  // RK4 vs exact propagation
  {
    double worst = 0.0;
    for (const ModelConfig& cfg : {ModelConfig::two_level(0.0, probe()), cw(100.0), sw(100.0)}) {
      const DensityMatrix rho0 = DensityMatrix::pure(cfg.dim(), 0);
      const Trajectory rk = evolve(cfg, kMain, rho0, 10 * kTau, 1e-5, {100});
      const Trajectory ex = propagate_piecewise(cfg, kMain, rho0, 10, 10);
      for (std::size_t i = 0; i < rk.size(); ++i)
        worst = std::max(worst, max_abs(rk.states[i].matrix() - ex.states[i].matrix()));
    }
    ok = ok && worst <= 1e-8;
    detail += fmt(" evolve vs exact %.2g;", worst);
  }
  // vanishing effective-Hamiltonian correction and micromotion mean
  {
    double corr = 0.0, fe = 0.0, mean = 0.0;
    for (const ModelConfig& cfg : {ModelConfig::two_level(0.0, probe()), cw(50.0), sw(50.0)}) {
      const FloquetBlocks b = floquet_blocks(cfg);
      const EffectiveHamiltonian e = effective_hamiltonian(b);
      const DensityMatrix rho = static_steady_state(b.h0, kMain);
      corr = std::max(corr, max_abs(e.correction));
      fe = std::max(fe, max_abs(floquet_engineering_part(b.h0, e.correction, rho, kMain)));
      ComplexMatrix acc = ComplexMatrix::Zero(b.h0.rows(), b.h0.cols());
      for (int i = 0; i < 500; ++i) acc += micromotion_part(b, rho, kTau * i / 500.0);
      mean = std::max(mean, max_abs(acc / 500.0));
    }
    ok = ok && corr == 0.0 && fe == 0.0 && mean <= 1e-12;
    detail += fmt(" dH_eff %.2g, sigma_FE %.2g, micromotion mean %.2g;", corr, fe, mean);
  }
  // fourth-order convergence
  {
    const ModelConfig cfg = ModelConfig::two_level(angular(50.0), SquareWaveEnvelope(angular(50.0), kTau));
    auto end_state = [&](std::size_t steps) {
      return evolve(cfg, kMain, DensityMatrix::pure(2, 0), kTau, kTau / static_cast<double>(steps), {steps})
          .states.back()
          .matrix();
    };
    const ComplexMatrix a = end_state(100), b = end_state(200), c = end_state(400);
    const double ratio = max_abs(a - b) / max_abs(b - c);
    ok = ok && std::abs(ratio - 16.0) <= 3.2;
    detail += fmt(" RK4 error ratio %.2f", ratio);
  }
  return {ok, detail};
}

Outcome criterion10() {
  const double e1 = two_level_discrepancy(0.01);
  const double e2 = two_level_discrepancy(0.005);
  const double ratio = e1 / e2;
  return {std::abs(ratio - 4.0) <= 1.2, fmt("discrepancy %.4g -> %.4g, ratio %.3f", e1, e2, ratio)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"two-level NESS vs closed-form time series", criterion1},
      {"closed-form steady states vs linear solver", criterion2},
      {"micromotion triangle amplitude", criterion3},
      {"CW vs SW ON-state fluctuation", criterion4},
      {"OFF/ON ratio sweep", criterion5},
      {"switching-event transient", criterion6},
      {"robustness against mismatch", criterion7},
      {"EIT absorption spectrum", criterion8},
      {"engine property suite", criterion9},
      {"omega^-2 scaling of the leading-order error", criterion10}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
