#ifndef PULSESWITCH_CLI_CONFIG_HPP
#define PULSESWITCH_CLI_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pulseswitch/lindblad.hpp"
#include "pulseswitch/models.hpp"
#include "pulseswitch/switching.hpp"

namespace pulseswitch::cli {

/// Schema violation; key() is the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

enum class Command { Evolve, Ness, AnalyticCompare, Sweep, SwitchEvent, Robustness, Spectrum };

std::string to_string(Command c);

// All frequencies and rates are cyclic (x / 2pi); times are in simulation units.
struct ModelBlock {
  ModelKind kind = ModelKind::TwoLevel;
  double delta = 0.0;
  double omega_p = 0.5;
  std::optional<double> omega_c;
  double tau = 0.01;
  double duty = 0.5;
  double alpha = 0.0;
};

struct RatesBlock {
  std::string preset = "main";
  double g10 = 1.0;
  double g11 = 0.2;
  double g21 = 1.2;
  double g22 = 0.2;
};

struct SimBlock {
  double dt = 1e-5;
  double t_max = 1.0;
  double ness_tol = 1e-8;
  std::size_t fourier_terms = 500;
  std::size_t sample_stride = 1;
};

struct CommandBlock {
  Command name = Command::Ness;
  std::vector<double> omega_c;  // sweep, robustness (cyclic)
  std::vector<std::string> modes;  // sweep: "cw" / "sw"
  std::vector<double> alpha;    // robustness (time units)
  std::vector<double> delta;    // spectrum (cyclic)
  double toggle_time = 1.0;     // switch-event
};

struct RunConfig {
  ModelBlock model;
  RatesBlock rates;
  SimBlock sim;
  CommandBlock command;

  ModelConfig model_config() const;
  DissipatorSpec dissipator() const;
};

/// Parses and validates a config document, filling defaults.
RunConfig parse_config(const nlohmann::json& doc);

/// Fully resolved config; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const RunConfig& config);

}  // namespace pulseswitch::cli

#endif  // PULSESWITCH_CLI_CONFIG_HPP
