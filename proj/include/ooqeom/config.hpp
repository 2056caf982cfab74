#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "ooqeom/vqe.hpp"

namespace ooq {

enum class SpectrumKind { absorption, ecd };

std::string to_string(SpectrumKind k);

/// Flat sectioned key-value run configuration.  Unknown keys are rejected;
/// relative input paths are resolved against the config file's directory.
struct RunConfig {
  std::string fcidump_path;
  std::vector<std::string> property_paths;

  int n_active_electrons = 0;
  int n_active_orbitals = 0;

  StartOrbitals start_orbitals = StartOrbitals::as_given;
  bool optimize_orbitals = true;

  int max_iterations = 300;
  double grad_tol = 1e-4;

  double linear_dep_tol = 1e-8;

  SpectrumKind kind = SpectrumKind::absorption;
  double broadening_ev = 0.4;
  double grid_min_ev = 0.0;
  double grid_max_ev = 30.0;
  int grid_points = 601;

  std::string output_dir = ".";
  std::uint64_t seed = 0;  // reserved for future stochastic features; unused

  std::map<std::string, std::string> raw;  // section.key -> value, for echoing

  /// Structural checks that do not need the input files.
  void validate() const;
};

RunConfig parse_run_config(std::istream& in);
RunConfig parse_run_config_file(const std::string& path);

}  // namespace ooq
