#ifndef PULSESWITCH_CLI_RUN_HPP
#define PULSESWITCH_CLI_RUN_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "pulseswitch/cli/config.hpp"

namespace pulseswitch::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kSuccess = 0, kConfigError = 1, kNumericalError = 2 };

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

Table execute(const RunConfig& config);

/// CSV text with a header row; floats carry 12 significant digits.
std::string to_csv(const Table& table);

std::string sha256_hex(const std::string& data);

/// Reads the config, runs it and writes result.csv and meta.json into out_dir.
int run(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
        std::ostream& err);

/// Writes one ready-to-run config per figure plus manifest.json.
void emit_figure_pack(const std::filesystem::path& out_dir);

}  // namespace pulseswitch::cli

#endif  // PULSESWITCH_CLI_RUN_HPP
