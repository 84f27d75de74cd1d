#include "pulseswitch/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "pulseswitch/expm.hpp"

namespace pulseswitch {

namespace {

using Index = Eigen::Index;

constexpr double kUnstableEigenvalue = -1e-6;
constexpr std::size_t kPositivityCheckInterval = 1000;

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

void require_dims(const ComplexMatrix& h, std::size_t dim, const char* what) {
  if (h.rows() != h.cols() || static_cast<std::size_t>(h.rows()) != dim)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

// out = -i[H, rho] + D[rho], written without temporaries.
void rhs_into(const ComplexMatrix& h, const std::vector<DissipatorSpec::Jump>& jumps,
              const ComplexMatrix& rho, ComplexMatrix& out) {
  const Index n = rho.rows();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      Complex c{0.0, 0.0};
      for (Index k = 0; k < n; ++k) c += h(i, k) * rho(k, j) - rho(i, k) * h(k, j);
      out(i, j) = Complex{c.imag(), -c.real()};  // -i * c
    }
  for (const auto& jump : jumps) {
    const auto f = static_cast<Index>(jump.from);
    const auto t = static_cast<Index>(jump.to);
    const double w = jump.weight;
    out(t, t) += w * rho(f, f);
    for (Index k = 0; k < n; ++k) {
      out(f, k) -= 0.5 * w * rho(f, k);
      out(k, f) -= 0.5 * w * rho(k, f);
    }
  }
}

double min_eigenvalue_of(const ComplexMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

struct SegmentOp {
  double begin;
  double length;
  ComplexMatrix h;
};

std::vector<SegmentOp> segment_hamiltonians(const ModelConfig& cfg) {
  std::vector<SegmentOp> out;
  for (const auto& s : constant_segments(cfg))
    out.push_back({s.begin, s.end - s.begin, hamiltonian_at(cfg, 0.5 * (s.begin + s.end))});
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

DissipatorSpec DissipatorSpec::standard() {
  return {angular(1.0), angular(0.2), angular(1.2), angular(0.2)};
}

DissipatorSpec DissipatorSpec::eit() {
  return {angular(1.0), angular(0.2), angular(0.1), angular(0.01)};
}

void DissipatorSpec::validate() const {
  for (double g : {g10, g11, g21, g22})
    if (!(g >= 0.0) || !std::isfinite(g))
      throw std::invalid_argument("dissipator: rates must be finite and non-negative");
}

double DissipatorSpec::rate(std::size_t from, std::size_t to) const {
  if (from == 1 && to == 0) return g10;
  if (from == 1 && to == 1) return g11;
  if (from == 2 && to == 1) return g21;
  if (from == 2 && to == 2) return g22;
  return 0.0;
}

std::vector<DissipatorSpec::Jump> DissipatorSpec::jumps(std::size_t dim) const {
  validate();
  std::vector<Jump> out;
  auto add = [&](std::size_t from, std::size_t to, double weight) {
    if (weight > 0.0 && from < dim && to < dim) out.push_back({from, to, weight});
  };
  add(1, 0, g10);
  add(2, 1, g21);
  // |i><i| with weight w damps coherences of level i at w/2.
  add(1, 1, 2.0 * g11);
  add(2, 2, 2.0 * g22);
  return out;
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() == 0 || rho_.rows() != rho_.cols())
    throw std::invalid_argument("density matrix must be square and non-empty");
  if (!rho_.allFinite()) throw std::invalid_argument("density matrix not finite");
  if (max_abs(rho_ - rho_.adjoint()) > kHermitianTol)
    throw std::invalid_argument("density matrix not Hermitian");
  if (std::abs(rho_.trace() - Complex{1.0, 0.0}) > kTraceTol)
    throw std::invalid_argument("density matrix trace differs from one");
  if (min_eigenvalue() < -kPositivityTol)
    throw std::invalid_argument("density matrix not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(std::size_t dim, std::size_t level) {
  if (level >= dim) throw std::invalid_argument("pure state: level out of range");
  ComplexMatrix rho = ComplexMatrix::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
  rho(static_cast<Index>(level), static_cast<Index>(level)) = 1.0;
  return DensityMatrix(std::move(rho), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  const auto n = static_cast<Index>(dim);
  return DensityMatrix(ComplexMatrix::Identity(n, n) / static_cast<double>(dim),
                       Unchecked{});
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix rho) {
  return DensityMatrix(std::move(rho), Unchecked{});
}

double DensityMatrix::min_eigenvalue() const { return min_eigenvalue_of(rho_); }

// ---------------------------------------------------------------------------

ComplexVector vectorize(const ComplexMatrix& rho) {
  return Eigen::Map<const ComplexVector>(rho.data(), rho.size());
}

ComplexMatrix unvectorize(const ComplexVector& v, std::size_t dim) {
  const auto n = static_cast<Index>(dim);
  if (v.size() != n * n) throw std::invalid_argument("unvectorize: size mismatch");
  return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& h, const DissipatorSpec& diss,
                           const ComplexMatrix& rho) {
  require_dims(h, static_cast<std::size_t>(rho.rows()), "lindblad_rhs");
  ComplexMatrix out(rho.rows(), rho.cols());
  rhs_into(h, diss.jumps(static_cast<std::size_t>(rho.rows())), rho, out);
  return out;
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& h, const DissipatorSpec& diss,
                           const DensityMatrix& rho) {
  return lindblad_rhs(h, diss, rho.matrix());
}

Liouvillian liouvillian_matrix(const ComplexMatrix& h, const DissipatorSpec& diss) {
  if (h.rows() != h.cols() || h.rows() == 0)
    throw std::invalid_argument("liouvillian: Hamiltonian must be square");
  const std::size_t dim = static_cast<std::size_t>(h.rows());
  const Index n = h.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);

  ComplexMatrix l = -kI * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& jump : diss.jumps(dim)) {
    ComplexMatrix op = ComplexMatrix::Zero(n, n);
    op(static_cast<Index>(jump.to), static_cast<Index>(jump.from)) = 1.0;
    const ComplexMatrix ldl = op.adjoint() * op;
    l += jump.weight * (kron(op.conjugate(), op) - 0.5 * kron(id, ldl) -
                        0.5 * kron(ldl.transpose(), id));
  }
  return {std::move(l), dim, h};
}

// ---------------------------------------------------------------------------

void check_step_alignment(const ModelConfig& cfg, double dt) {
  const double tau = cfg.period();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("time step must be positive");
  if (dt > tau / 100.0 * (1.0 + 1e-12))
    throw std::invalid_argument("time step must not exceed period / 100");
  auto aligned = [dt](double x) {
    const double k = x / dt;
    return std::abs(k - std::round(k)) <= 1e-6;
  };
  if (!aligned(tau)) throw std::invalid_argument("period is not a multiple of the time step");
  for (const auto& s : constant_segments(cfg))
    if (!aligned(s.begin) || !aligned(s.end))
      throw std::invalid_argument("envelope edge not aligned with the time step");
}

Trajectory evolve(const ModelConfig& cfg, const DissipatorSpec& diss,
                  const DensityMatrix& rho0, double t_end, double dt,
                  EvolveOptions options) {
  if (rho0.dim() != cfg.dim()) throw std::invalid_argument("evolve: state dimension mismatch");
  if (options.sample_stride == 0) throw std::invalid_argument("evolve: sample stride must be >= 1");
  check_step_alignment(cfg, dt);
  if (!(t_end >= 0.0)) throw std::invalid_argument("evolve: t_end must be non-negative");
  const double steps_real = t_end / dt;
  const auto n_steps = static_cast<std::size_t>(std::llround(steps_real));
  if (std::abs(steps_real - static_cast<double>(n_steps)) > 1e-6)
    throw std::invalid_argument("evolve: t_end must be a multiple of dt");

  const auto jumps = diss.jumps(cfg.dim());
  const auto segments = segment_hamiltonians(cfg);
  const double tau = cfg.period();
  auto h_for_step = [&](std::size_t k) -> const ComplexMatrix& {
    double phase = std::fmod((static_cast<double>(k) + 0.5) * dt, tau);
    for (const auto& s : segments)
      if (phase < s.begin + s.length) return s.h;
    return segments.back().h;
  };

  const Index n = static_cast<Index>(cfg.dim());
  ComplexMatrix rho = rho0.matrix();
  ComplexMatrix k1(n, n), k2(n, n), k3(n, n), k4(n, n), tmp(n, n);

  Trajectory traj;
  traj.sample_step = dt * static_cast<double>(options.sample_stride);
  traj.fingerprint = cfg.fingerprint();
  const std::size_t n_samples = n_steps / options.sample_stride + 1;
  traj.times.reserve(n_samples);
  traj.states.reserve(n_samples);
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);

  for (std::size_t k = 0; k < n_steps; ++k) {
    const ComplexMatrix& h = h_for_step(k);
    rhs_into(h, jumps, rho, k1);
    tmp = rho + (0.5 * dt) * k1;
    rhs_into(h, jumps, tmp, k2);
    tmp = rho + (0.5 * dt) * k2;
    rhs_into(h, jumps, tmp, k3);
    tmp = rho + dt * k3;
    rhs_into(h, jumps, tmp, k4);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    tmp = 0.5 * (rho + rho.adjoint());
    rho = tmp;
    const Complex tr = rho.trace();
    traj.max_trace_correction = std::max(traj.max_trace_correction, std::abs(tr - 1.0));
    rho /= tr.real();
    if (!rho.allFinite()) throw NumericalError("integration unstable");

    const bool store = (k + 1) % options.sample_stride == 0;
    if (store || (k + 1) % kPositivityCheckInterval == 0) {
      if (min_eigenvalue_of(rho) < kUnstableEigenvalue) throw NumericalError("integration unstable");
    }
    if (store) {
      traj.times.push_back(static_cast<double>(k + 1) * dt);
      traj.states.push_back(DensityMatrix::trusted(rho));
    }
  }
  return traj;
}

// ---------------------------------------------------------------------------

namespace {

struct PeriodPlan {
  std::vector<ComplexMatrix> propagators;  // applied in order
  std::vector<bool> sample_before;         // record the state before step i
};

PeriodPlan plan_period(const ModelConfig& cfg, const DissipatorSpec& diss,
                       std::size_t samples_per_period) {
  const double tau = cfg.period();
  const auto segments = segment_hamiltonians(cfg);
  std::vector<ComplexMatrix> generators;
  generators.reserve(segments.size());
  for (const auto& s : segments) generators.push_back(liouvillian_matrix(s.h, diss).matrix);

  // merge sample instants with segment boundaries
  struct Cut {
    double t;
    bool sample;
  };
  std::vector<Cut> cuts;
  for (std::size_t j = 0; j < samples_per_period; ++j)
    cuts.push_back({tau * static_cast<double>(j) / static_cast<double>(samples_per_period), true});
  for (const auto& s : segments) cuts.push_back({s.begin, false});
  std::stable_sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.t < b.t; });

  const double eps = 1e-12 * tau;
  std::vector<Cut> merged;
  for (const auto& c : cuts) {
    if (!merged.empty() && std::abs(c.t - merged.back().t) <= eps) {
      merged.back().sample = merged.back().sample || c.sample;
    } else {
      merged.push_back(c);
    }
  }

  PeriodPlan plan;
  std::size_t seg = 0;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    const double a = merged[i].t;
    const double b = i + 1 < merged.size() ? merged[i + 1].t : tau;
    while (seg + 1 < segments.size() && a >= segments[seg + 1].begin - eps) ++seg;
    plan.propagators.push_back(expm(generators[seg] * (b - a)));
    plan.sample_before.push_back(merged[i].sample);
  }
  return plan;
}

}  // namespace

Trajectory propagate_piecewise(const ModelConfig& cfg, const DissipatorSpec& diss,
                               const DensityMatrix& rho0, std::size_t n_periods,
                               std::size_t samples_per_period) {
  if (rho0.dim() != cfg.dim())
    throw std::invalid_argument("propagate_piecewise: state dimension mismatch");
  if (samples_per_period == 0)
    throw std::invalid_argument("propagate_piecewise: need at least one sample per period");

  const PeriodPlan plan = plan_period(cfg, diss, samples_per_period);
  const double tau = cfg.period();
  const double step = tau / static_cast<double>(samples_per_period);

  Trajectory traj;
  traj.sample_step = step;
  traj.fingerprint = cfg.fingerprint();
  traj.times.reserve(n_periods * samples_per_period + 1);
  traj.states.reserve(n_periods * samples_per_period + 1);

  ComplexVector v = vectorize(rho0.matrix());
  ComplexVector next(v.size());
  auto record = [&](double t) {
    ComplexMatrix rho = unvectorize(v, cfg.dim());
    rho = 0.5 * (rho + rho.adjoint()).eval();
    if (!rho.allFinite() || min_eigenvalue_of(rho) < kUnstableEigenvalue)
      throw NumericalError("integration unstable");
    traj.times.push_back(t);
    traj.states.push_back(DensityMatrix::trusted(std::move(rho)));
  };

  for (std::size_t p = 0; p < n_periods; ++p) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < plan.propagators.size(); ++i) {
      if (plan.sample_before[i]) {
        record(static_cast<double>(p) * tau + static_cast<double>(j) * step);
        ++j;
      }
      next.noalias() = plan.propagators[i] * v;
      v.swap(next);
    }
  }
  record(static_cast<double>(n_periods) * tau);
  return traj;
}

ComplexMatrix period_propagator(const ModelConfig& cfg, const DissipatorSpec& diss) {
  const PeriodPlan plan = plan_period(cfg, diss, 1);
  const auto n = static_cast<Index>(cfg.dim() * cfg.dim());
  ComplexMatrix p = ComplexMatrix::Identity(n, n);
  for (const auto& step : plan.propagators) p = (step * p).eval();
  return p;
}

// ---------------------------------------------------------------------------

DensityMatrix static_steady_state(const ComplexMatrix& h0, const DissipatorSpec& diss) {
  const Liouvillian l = liouvillian_matrix(h0, diss);
  const Index n = static_cast<Index>(l.dim);
  const Index nn = n * n;

  Eigen::JacobiSVD<ComplexMatrix> svd(l.matrix);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-10 * std::max(1.0, sv(0));
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  if (rank < nn - 1) throw NumericalError("steady state not unique");

  ComplexMatrix a = l.matrix;
  a.row(nn - 1).setZero();
  for (Index i = 0; i < n; ++i) a(nn - 1, i + i * n) = 1.0;
  ComplexVector rhs = ComplexVector::Zero(nn);
  rhs(nn - 1) = 1.0;
  const ComplexVector x = a.fullPivLu().solve(rhs);

  ComplexMatrix rho = unvectorize(x, l.dim);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

// ---------------------------------------------------------------------------

NessDetection detect_ness(const Trajectory& traj, double period, double tol) {
  if (!(period > 0.0)) throw std::invalid_argument("detect_ness: period must be positive");
  if (traj.size() < 2 || traj.times.back() - traj.times.front() < 3.0 * period * (1.0 - 1e-9))
    throw std::invalid_argument("detect_ness: trajectory must cover at least three periods");

  // stroboscopic samples: (period index, sample index)
  std::vector<std::pair<long, std::size_t>> strobe;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double k = traj.times[i] / period;
    if (std::abs(k - std::round(k)) <= 1e-9 * std::max(1.0, std::abs(k)))
      strobe.emplace_back(std::lround(k), i);
  }
  for (std::size_t s = 1; s < strobe.size(); ++s) {
    if (strobe[s].first != strobe[s - 1].first + 1) continue;
    const double diff =
        max_abs(traj.states[strobe[s].second].matrix() - traj.states[strobe[s - 1].second].matrix());
    if (diff <= tol) {
      NessDetection out;
      out.period_index = static_cast<std::size_t>(strobe[s].first);
      for (std::size_t i = strobe[s - 1].second; i < strobe[s].second; ++i) {
        out.samples.push_back(traj.states[i]);
        out.times.push_back(traj.times[i]);
      }
      return out;
    }
  }
  throw NumericalError("not converged");
}

NessCycle find_ness(const ModelConfig& cfg, const DissipatorSpec& diss,
                    const NessOptions& options) {
  constexpr std::size_t kChunk = 256;
  const double tau = cfg.period();
  DensityMatrix state = DensityMatrix::pure(cfg.dim(), 0);
  std::size_t done = 0;

  while (done < options.max_periods) {
    const std::size_t chunk = std::min(kChunk, options.max_periods - done);
    Trajectory strobe = propagate_piecewise(cfg, diss, state, std::max<std::size_t>(chunk, 3), 1);
    for (auto& t : strobe.times) t += static_cast<double>(done) * tau;
    std::optional<NessDetection> hit;
    try {
      hit = detect_ness(strobe, tau, options.tol);
    } catch (const NumericalError&) {
      done += std::max<std::size_t>(chunk, 3);
      state = strobe.states.back();
      continue;
    }
    const std::size_t k = hit->period_index;
    Trajectory cycle =
        propagate_piecewise(cfg, diss, strobe.states[k - done], 1, options.samples_per_period);
    cycle.times.pop_back();
    cycle.states.pop_back();
    for (auto& t : cycle.times) t += static_cast<double>(k) * tau;
    return {k, std::move(cycle)};
  }
  throw NumericalError("not converged");
}

}  // namespace pulseswitch
