#pragma once

// JSON run configuration shared by the command-line subcommands.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csq/convolution.hpp"
#include "csq/potential.hpp"
#include "csq/spectroscopy.hpp"

namespace csq {

struct SymbolGrid {
  double re_min = -2.0;
  double re_max = 2.0;
  double im_min = -2.0;
  double im_max = 2.0;
  int points = 9;  // per axis
};

struct SpectroscopyConfig {
  ElectronicState ground;
  ElectronicState excited;
  std::pair<double, double> reference_masses{0.0, 0.0};     // u
  std::pair<double, double> isotopologue_masses{0.0, 0.0};  // u
  std::optional<double> rho;
  std::vector<std::pair<int, int>> bands;  // (n', n)
  std::vector<double> observed;
  std::string notes;
};

struct RunConfig {
  enum class Mode { dimensionless, physical };
  Mode mode = Mode::dimensionless;

  double hbar = 1.0;
  double mass = 1.0;
  std::optional<double> c;
  double ell = 1.0;
  std::optional<double> basis_length;

  int N = 32;
  std::optional<int> guard;
  std::optional<int> radial_nodes;
  std::optional<int> angular_nodes;
  std::optional<std::string> output_path;

  std::string function = "z zbar";
  double s = -1.0;

  std::optional<Potential1D> potential;
  std::optional<VectorPotential1D> vector_potential;
  double classical_proper_energy = 0.0;
  bool include_rest_mass = false;
  int levels = 5;
  double tol = 1e-9;
  int max_dim = 4096;

  SymbolGrid symbol;
  std::vector<double> povm_s{-2.0, -1.0, -0.5, 0.0};

  std::optional<SpectroscopyConfig> spectroscopy;

  std::uint64_t hash = 0;  // FNV-1a of the canonical JSON text

  PhaseSpaceScales scales() const;
  HamiltonianSpec hamiltonian() const;
  TruncationSpec truncation() const;
};

/// Parses and schema-checks a JSON document. Unknown keys, wrong types and a
/// physical mode without m and c raise ConfigError; malformed JSON raises ParseError.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

/// Builds a potential from its JSON text, e.g. {"type": "gaussian", "depth": 1, "width": 1}.
Potential1D parse_potential(const std::string& json_text);

std::uint64_t fnv1a64(const std::string& data);

}  // namespace csq
