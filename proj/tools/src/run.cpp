#include "pulseswitch/cli/run.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "pulseswitch/floquet.hpp"

namespace pulseswitch::cli {

namespace {

std::vector<std::string> state_header(std::size_t dim) {
  std::vector<std::string> h{"t", "re_rho10", "im_rho10", "rho00", "rho11"};
  if (dim == 3) h.push_back("rho22");
  return h;
}

std::vector<Cell> state_row(double t, const DensityMatrix& rho) {
  std::vector<Cell> row{t, rho(1, 0).real(), rho(1, 0).imag(), rho(0, 0).real(), rho(1, 1).real()};
  if (rho.dim() == 3) row.emplace_back(rho(2, 2).real());
  return row;
}

NessCycle ness_of(const RunConfig& c, const ModelConfig& cfg) {
  const double sample = c.sim.dt * static_cast<double>(c.sim.sample_stride);
  const auto per_period = static_cast<std::size_t>(std::llround(c.model.tau / sample));
  return find_ness(cfg, c.dissipator(), {c.sim.ness_tol, per_period, NessOptions{}.max_periods});
}

NessOptions sweep_options(const RunConfig& c) {
  const double sample = c.sim.dt * static_cast<double>(c.sim.sample_stride);
  return {c.sim.ness_tol, static_cast<std::size_t>(std::llround(c.model.tau / sample)),
          NessOptions{}.max_periods};
}

std::vector<double> to_angular(const std::vector<double>& xs) {
  std::vector<double> out;
  for (double x : xs) out.push_back(angular(x));
  return out;
}

Table evolve_table(const RunConfig& c) {
  const ModelConfig cfg = c.model_config();
  const Trajectory tr = evolve(cfg, c.dissipator(), DensityMatrix::pure(cfg.dim(), 0), c.sim.t_max, c.sim.dt,
                               {c.sim.sample_stride});
  Table t{state_header(cfg.dim()), {}};
  for (std::size_t i = 0; i < tr.size(); ++i) t.rows.push_back(state_row(tr.times[i], tr.states[i]));
  return t;
}

Table ness_table(const RunConfig& c) {
  const ModelConfig cfg = c.model_config();
  const NessCycle ness = ness_of(c, cfg);
  Table t{state_header(cfg.dim()), {}};
  for (std::size_t i = 0; i < ness.cycle.size(); ++i)
    t.rows.push_back(state_row(ness.cycle.times[i], ness.cycle.states[i]));
  return t;
}

Table analytic_table(const RunConfig& c) {
  const ModelConfig cfg = c.model_config();
  const DissipatorSpec diss = c.dissipator();
  const NessCycle ness = ness_of(c, cfg);
  const std::size_t n = c.sim.fourier_terms;
  const double omega = cfg.floquet_frequency();
  const double p = angular(c.model.omega_p);
  std::optional<NessDecomposition> dec;
  if (c.model.delta != 0.0 || cfg.kind() == ModelKind::ThreeLevelSW) dec = decompose_ness(cfg, diss, n);

  Table t{{"t", "im_rho10_num", "im_rho10_analytic", "diff"}, {}};
  for (std::size_t i = 0; i < ness.cycle.size(); ++i) {
    const double time = ness.cycle.times[i];
    double analytic = 0.0;
    if (dec)
      analytic = ness_leading_order(*dec, time)(1, 0).imag();
    else if (cfg.kind() == ModelKind::TwoLevel)
      analytic = two_level_ness_rho10(p, diss, omega, time, n).imag();
    else
      analytic = cw_ness_rho10(p, cfg.control_amplitude(), diss, omega, time, n).imag();
    const double num = ness.cycle.states[i](1, 0).imag();
    t.rows.push_back({time, num, analytic, num - analytic});
  }
  return t;
}

Table sweep_table(const RunConfig& c) {
  std::vector<ControlMode> modes;
  for (const auto& m : c.command.modes) modes.push_back(m == "cw" ? ControlMode::CW : ControlMode::SW);
  const std::vector<double> omegas = to_angular(c.command.omega_c);
  const auto rows = control_sweep(c.model_config(), c.dissipator(), omegas, modes, sweep_options(c));
  Table t{{"omega_c", "mode", "mean_im", "std_im", "ratio_db"}, {}};
  for (const auto& r : rows)
    t.rows.push_back({cyclic(r.omega_c), to_string(r.mode), r.metrics.mean_im_rho10, r.metrics.std_im_rho10,
                      r.metrics.ratio_db});
  return t;
}

Table switch_table(const RunConfig& c) {
  const ModelConfig cfg = c.model_config();
  const Trajectory tr = switching_event(cfg, c.dissipator(), c.command.toggle_time, c.sim.t_max, c.sim.dt,
                                       {c.sim.sample_stride});
  Table t{state_header(3), {}};
  t.header.push_back("control_on");
  for (std::size_t i = 0; i < tr.size(); ++i) {
    auto row = state_row(tr.times[i], tr.states[i]);
    // the sample at the toggle instant closes the OFF phase
    row.emplace_back(std::string(tr.times[i] > *tr.toggle_time + 0.5 * c.sim.dt ? "1" : "0"));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table robustness_table(const RunConfig& c) {
  const ModelConfig off = c.model_config();
  const ModelConfig sw_on = ModelConfig::three_level_sw(off.delta(), off.probe(), off.probe());
  const std::vector<double> omegas = to_angular(c.command.omega_c);
  const auto rows = robustness_scan(sw_on, c.dissipator(), c.command.alpha, omegas, sweep_options(c));
  Table t{{"alpha", "omega_c", "mean_im", "std_im", "ratio_db"}, {}};
  for (const auto& r : rows)
    t.rows.push_back({r.alpha, cyclic(r.omega_c), r.metrics.mean_im_rho10, r.metrics.std_im_rho10,
                      r.metrics.ratio_db});
  return t;
}

Table spectrum_table(const RunConfig& c) {
  const std::vector<double> deltas = to_angular(c.command.delta);
  const auto points = absorption_spectrum(c.model_config(), c.dissipator(), deltas);
  Table t{{"delta", "im_rho10"}, {}};
  for (const auto& p : points) t.rows.push_back({cyclic(p.delta), p.im_rho10});
  return t;
}

std::string format_cell(const Cell& cell) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  const double x = std::get<double>(cell);
  if (!std::isfinite(x)) throw NumericalError("non-finite value in result");
  // avoid "-0" so sign-of-zero noise never changes the bytes
  return fmt::format("{:.12g}", x == 0.0 ? 0.0 : x);
}

}  // namespace

Table execute(const RunConfig& config) {
  switch (config.command.name) {
    case Command::Evolve:
      return evolve_table(config);
    case Command::Ness:
      return ness_table(config);
    case Command::AnalyticCompare:
      return analytic_table(config);
    case Command::Sweep:
      return sweep_table(config);
    case Command::SwitchEvent:
      return switch_table(config);
    case Command::Robustness:
      return robustness_table(config);
    case Command::Spectrum:
      return spectrum_table(config);
  }
  throw std::logic_error("unreachable");
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

int run(const std::filesystem::path& config_path, const std::filesystem::path& out_dir, std::ostream& err) {
  RunConfig config;
  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("<file>", "cannot read " + config_path.string());
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
    }
    config = parse_config(doc);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  std::string csv;
  try {
    csv = to_csv(execute(config));
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  const nlohmann::json resolved = to_json(config);
  const nlohmann::json meta = {{"version", kVersion},
                               {"command", to_string(config.command.name)},
                               {"config", resolved},
                               {"config_sha256", sha256_hex(resolved.dump())},
                               {"result_sha256", sha256_hex(csv)},
                               {"rows", std::count(csv.begin(), csv.end(), '\n') - 1}};
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  std::ofstream csv_out(out_dir / "result.csv", std::ios::binary);
  csv_out << csv;
  std::ofstream meta_out(out_dir / "meta.json", std::ios::binary);
  meta_out << meta.dump(2) << '\n';
  if (ec || !csv_out || !meta_out) {
    err << "config error: --out: cannot write to " << out_dir.string() << '\n';
    return kConfigError;
  }
  return kSuccess;
}

}  // namespace pulseswitch::cli
