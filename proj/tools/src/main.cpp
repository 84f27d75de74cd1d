#include <iostream>

#include "CLI11.hpp"
#include "pulseswitch/cli/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Square-wave driven dissipative few-level simulator"};
  app.set_version_flag("--version", pulseswitch::cli::kVersion);

  std::string config;
  std::string out_dir;
  std::string pack_dir;
  app.add_option("config", config, "run configuration (JSON)");
  app.add_option("--out", out_dir, "output directory for result.csv and meta.json");
  auto* pack = app.add_option("--figure-pack", pack_dir, "write ready-to-run figure configs into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : pulseswitch::cli::kConfigError;
  }

  try {
    if (*pack) {
      pulseswitch::cli::emit_figure_pack(pack_dir);
      if (config.empty()) return pulseswitch::cli::kSuccess;
    }
    if (config.empty() || out_dir.empty()) {
      std::cerr << "usage: " << app.get_name() << " <config.json> --out <dir>\n";
      return pulseswitch::cli::kConfigError;
    }
    return pulseswitch::cli::run(config, out_dir, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return pulseswitch::cli::kNumericalError;
  }
}
