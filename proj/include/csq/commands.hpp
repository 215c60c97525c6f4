#pragma once

// Subcommands behind the `csq` executable. Each one renders a deterministic
// CSV document; run_command handles output routing and exit codes.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "csq/config.hpp"

namespace csq {

inline constexpr const char* kToolVersion = "0.1.0";

struct CommandOptions {
  std::optional<std::string> config_path;
  std::optional<std::string> out;
  std::optional<int> N;
  std::vector<double> s;
  std::optional<int> guard;
  std::optional<std::string> function;
  std::optional<double> rho;
};

/// Config with the command-line overrides applied.
RunConfig resolve_config(const CommandOptions& opts);

std::string cmd_quantize(const RunConfig& cfg);
std::string cmd_spectrum(const RunConfig& cfg);
std::string cmd_symbol(const RunConfig& cfg);
std::string cmd_isotope(const RunConfig& cfg, std::optional<double> rho_override = {});
std::string cmd_povm(const RunConfig& cfg);

/// 0 success, 2 usage/parse/config, 3 numeric or domain failure, 4 no convergence.
int exit_code_for(const std::exception& e);

/// Runs one subcommand, writing CSV to opts.out (or the config's output path,
/// or `out`) and diagnostics to `err`.
int run_command(const std::string& name, const CommandOptions& opts, std::ostream& out,
                std::ostream& err);

}  // namespace csq
