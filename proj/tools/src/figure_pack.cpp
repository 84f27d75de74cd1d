#include <fstream>

#include "pulseswitch/cli/run.hpp"

namespace pulseswitch::cli {

namespace {

struct Entry {
  const char* file;
  const char* description;
  RunConfig config;
  nlohmann::json curves;  // CSV column -> curve
};

std::vector<double> range(double start, double stop, double step) {
  std::vector<double> out;
  for (int i = 0; start + i * step <= stop + 1e-9 * step; ++i) out.push_back(start + i * step);
  return out;
}

RunConfig base(ModelKind kind, std::optional<double> omega_c, Command cmd) {
  RunConfig c;
  c.model.kind = kind;
  c.model.omega_c = omega_c;
  c.command.name = cmd;
  return c;
}

std::vector<Entry> entries() {
  std::vector<Entry> out;

  out.push_back({"fig2.json", "two-level NESS: numerics vs closed-form time series",
                 base(ModelKind::TwoLevel, std::nullopt, Command::AnalyticCompare),
                 {{"im_rho10_num", "numerical NESS"}, {"im_rho10_analytic", "closed-form NESS"}}});

  out.push_back({"fig3.json", "CW three-level NESS at omega_c = 50",
                 base(ModelKind::ThreeLevelCW, 50.0, Command::AnalyticCompare),
                 {{"im_rho10_num", "numerical NESS"}, {"im_rho10_analytic", "closed-form NESS"}}});

  out.push_back({"fig4.json", "SW three-level NESS at omega_c = 10",
                 base(ModelKind::ThreeLevelSW, 10.0, Command::AnalyticCompare),
                 {{"im_rho10_num", "numerical NESS"},
                  {"im_rho10_analytic", "static part plus micromotion"}}});

  {
    RunConfig c = base(ModelKind::TwoLevel, std::nullopt, Command::Sweep);
    c.command.omega_c = range(20.0, 160.0, 10.0);
    c.command.modes = {"cw", "sw"};
    out.push_back({"fig4b.json", "ON-state mean and standard deviation of Im rho10 vs omega_c", c,
                   {{"mean_im", "average (rows with mode cw / sw)"},
                    {"std_im", "standard deviation (error bar)"}}});
  }

  for (auto [file, kind, label] : {std::tuple{"fig5a.json", ModelKind::ThreeLevelCW, "CW"},
                                   std::tuple{"fig5b.json", ModelKind::ThreeLevelSW, "SW"}}) {
    RunConfig c = base(kind, 120.0, Command::SwitchEvent);
    c.command.toggle_time = 1.0;
    c.sim.t_max = 3.0;
    c.sim.sample_stride = 100;
    out.push_back({file, label == std::string("CW") ? "switching event with CW control"
                                                     : "switching event with SW control",
                   c, {{"im_rho10", "Im rho10(t)"}, {"control_on", "control field state"}}});
  }

  {
    RunConfig c = base(ModelKind::TwoLevel, std::nullopt, Command::Sweep);
    c.command.omega_c = range(20.0, 160.0, 10.0);
    c.command.modes = {"cw", "sw"};
    out.push_back({"fig5c.json", "OFF/ON reflected-power ratio vs omega_c for both control modes", c,
                   {{"ratio_db", "OFF/ON ratio in dB (rows with mode cw / sw)"}}});
  }

  {
    RunConfig c = base(ModelKind::TwoLevel, std::nullopt, Command::Robustness);
    c.command.omega_c = range(20.0, 160.0, 10.0);
    c.command.alpha = {0.0, 0.01 * c.model.tau, -0.01 * c.model.tau};
    out.push_back({"fig6.json", "robustness of the OFF/ON ratio against control mismatch", c,
                   {{"ratio_db", "alpha = 0: matched; alpha > 0: redundant cover; alpha < 0: incomplete cover"}}});
  }

  {
    RunConfig c = base(ModelKind::ThreeLevelCW, 5.0, Command::Spectrum);
    c.rates = RatesBlock{"eit", 1.0, 0.2, 0.1, 0.01};
    c.command.delta = range(-6.0, 6.0, 0.05);
    out.push_back({"fig7a.json", "EIT transparency window", c, {{"im_rho10", "absorption Im rho10(delta)"}}});
  }

  {
    RunConfig c = base(ModelKind::TwoLevel, std::nullopt, Command::Sweep);
    c.rates = RatesBlock{"eit", 1.0, 0.2, 0.1, 0.01};
    c.command.omega_c = range(10.0, 100.0, 10.0);
    c.command.modes = {"cw", "sw"};
    out.push_back({"fig7cd.json", "EIT rates: ON-state statistics and OFF/ON ratio vs omega_c", c,
                   {{"mean_im", "average"}, {"std_im", "standard deviation"}, {"ratio_db", "OFF/ON ratio in dB"}}});
  }
  return out;
}

}  // namespace

void emit_figure_pack(const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  nlohmann::json manifest = nlohmann::json::array();
  for (const auto& e : entries()) {
    std::ofstream out(out_dir / e.file, std::ios::binary);
    out << to_json(e.config).dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write " + (out_dir / e.file).string());
    manifest.push_back({{"config", e.file},
                        {"description", e.description},
                        {"command", to_string(e.config.command.name)},
                        {"output", "result.csv"},
                        {"curves", e.curves}});
  }
  std::ofstream out(out_dir / "manifest.json", std::ios::binary);
  out << nlohmann::json{{"version", kVersion}, {"figures", manifest}}.dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write manifest");
}

}  // namespace pulseswitch::cli
