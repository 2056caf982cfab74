#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ooqeom/config.hpp"
#include "ooqeom/properties.hpp"
#include "ooqeom/qeom.hpp"
#include "ooqeom/vqe.hpp"

namespace ooq {

/// Process exit codes of the command-line driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitConvergence = 3;
inline constexpr int kExitInstability = 4;

struct StateRecord {
  double excitation_hartree = 0.0;
  double excitation_ev = 0.0;
  double oscillator_strength = 0.0;
  double rotational_strength = 0.0;
  TransitionMoments moments;
};

struct PipelineResult {
  ActiveSpaceSpec spec;
  int n_electrons = 0;
  VqeResult vqe;
  std::vector<std::string> labels;   // excitation-operator labels
  Eigen::VectorXd grad_diag;         // |<[H, Q_I]>| per operator
  double max_delta = 0.0;            // structure diagnostics
  double max_sigma_qg = 0.0;
  double max_a_nonhermiticity = 0.0;
  double max_b_asymmetry = 0.0;
  double max_sigma_nonhermiticity = 0.0;
  double max_pairing_dev = 0.0;
  EomSolution sol;
  bool has_electric = false;
  bool has_magnetic = false;
  std::vector<StateRecord> states;
  Spectrum spectrum;
  std::vector<std::pair<std::string, double>> stage_seconds;
};

/// Ingest -> oo-VQE -> qEOM -> properties -> spectrum, entirely in memory.
/// Throws InputError / InstabilityError with stage attribution; VQE
/// non-convergence is flagged on the result instead of thrown.
PipelineResult run_pipeline(const RunConfig& cfg);

std::string results_json_text(const RunConfig& cfg, const PipelineResult& res);
std::string spectrum_csv_text(const Spectrum& sp);
std::string manifest_json_text(const RunConfig& cfg, const PipelineResult& res,
                               const std::string& config_path);

/// Runs the pipeline and writes results.json, spectrum.csv and manifest.json
/// into cfg.output_dir.  Nothing is written when a stage throws.  Returns
/// kExitOk, or kExitConvergence when the optimizer missed its criterion
/// (outputs are still written, flagged as unconverged).
int command_run(const RunConfig& cfg, const std::string& config_path);

/// Input checks without running the pipeline; returns human-readable issues
/// (empty means valid).
std::vector<std::string> validate_inputs(const RunConfig& cfg);
int command_validate(const RunConfig& cfg);

/// Exact-diagonalization reference on the same inputs (orbitals as given,
/// no optimization): prints an excitation/strength table and writes
/// oracle.json into cfg.output_dir.
int command_oracle(const RunConfig& cfg);

}  // namespace ooq
