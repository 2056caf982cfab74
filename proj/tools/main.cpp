#include <CLI11.hpp>

#include <Eigen/Core>
#include <cstdlib>
#include <iostream>
#include <string>

#include "ooqeom/pipeline.hpp"

namespace {

void configure_threads() {
  if (const char* env = std::getenv("OOQEOM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) Eigen::setNbThreads(n);
  }
}

}  // namespace

int main(int argc, char** argv) {
  configure_threads();

  CLI::App app{"orbital-optimized VQE + qEOM excitation spectra"};
  app.require_subcommand(1);

  std::string config_path;
  auto* cmd_run = app.add_subcommand("run", "run the full pipeline and write result files");
  cmd_run->add_option("config", config_path, "run configuration file")->required();
  auto* cmd_validate =
      app.add_subcommand("validate", "check the input files without running the pipeline");
  cmd_validate->add_option("config", config_path, "run configuration file")->required();
  auto* cmd_oracle = app.add_subcommand(
      "oracle", "exact-diagonalization reference on the same inputs, with a comparison table");
  cmd_oracle->add_option("config", config_path, "run configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ooq::kExitOk : ooq::kExitInput;
  }

  try {
    const ooq::RunConfig cfg = ooq::parse_run_config_file(config_path);
    if (cmd_run->parsed()) return ooq::command_run(cfg, config_path);
    if (cmd_validate->parsed()) return ooq::command_validate(cfg);
    if (cmd_oracle->parsed()) return ooq::command_oracle(cfg);
    return ooq::kExitInternal;
  } catch (const ooq::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return ooq::kExitInput;
  } catch (const ooq::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return ooq::kExitConvergence;
  } catch (const ooq::InstabilityError& e) {
    std::cerr << "instability error: " << e.what() << "\n";
    return ooq::kExitInstability;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ooq::kExitInternal;
  }
}
