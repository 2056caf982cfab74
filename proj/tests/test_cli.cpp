#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ooqeom/jordan_wigner.hpp"
#include "ooqeom/oracle.hpp"
#include "ooqeom/pipeline.hpp"

using namespace ooq;
namespace fs = std::filesystem;

namespace {

std::string fixture(const std::string& name) { return std::string(OOQEOM_FIXTURE_DIR) + "/" + name; }

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("ooqeom_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string h2_config(const fs::path& outdir) {
  return "[system]\n"
         "fcidump = " + fixture("h2_sto3g.fcidump") + "\n"
         "properties = " + fixture("h2_sto3g_dipole.propints") + "\n"
         "[active_space]\n"
         "n_electrons = 2\n"
         "n_orbitals = 2\n"
         "[spectrum]\n"
         "kind = absorption\n"
         "grid_min_ev = 0\n"
         "grid_max_ev = 40\n"
         "grid_points = 401\n"
         "[output]\n"
         "directory = " + outdir.string() + "\n";
}

int run_binary(const std::string& args) {
  const int status = std::system((std::string(OOQEOM_CLI_PATH) + " " + args +
                                  " > /dev/null 2> /dev/null")
                                     .c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("all sections round-trip into fields") {
    std::istringstream in(
        "# comment\n"
        "[system]\n"
        "fcidump = some.fcidump\n"
        "properties = a.propints b.propints\n"
        "[active_space]\n"
        "n_electrons = 4\n"
        "n_orbitals = 4\n"
        "[orbitals]\n"
        "start = mp2_natural\n"
        "optimize = false\n"
        "[optimizer]\n"
        "max_iterations = 42\n"
        "grad_tol = 1e-5\n"
        "[qeom]\n"
        "linear_dep_tol = 1e-7\n"
        "[spectrum]\n"
        "kind = ecd\n"
        "broadening_ev = 0.2\n"
        "grid_min_ev = 1\n"
        "grid_max_ev = 9\n"
        "grid_points = 33\n"
        "[output]\n"
        "directory = out\n"
        "[run]\n"
        "seed = 7\n");
    const RunConfig cfg = parse_run_config(in);
    CHECK(cfg.fcidump_path == "some.fcidump");
    REQUIRE(cfg.property_paths.size() == 2);
    CHECK(cfg.property_paths[1] == "b.propints");
    CHECK(cfg.n_active_electrons == 4);
    CHECK(cfg.n_active_orbitals == 4);
    CHECK(cfg.start_orbitals == StartOrbitals::mp2_natural);
    CHECK_FALSE(cfg.optimize_orbitals);
    CHECK(cfg.max_iterations == 42);
    CHECK(cfg.grad_tol == 1e-5);
    CHECK(cfg.linear_dep_tol == 1e-7);
    CHECK(cfg.kind == SpectrumKind::ecd);
    CHECK(cfg.broadening_ev == 0.2);
    CHECK(cfg.grid_points == 33);
    CHECK(cfg.output_dir == "out");
    CHECK(cfg.seed == 7);
  }
  SUBCASE("defaults match the documented settings") {
    std::istringstream in(
        "[system]\nfcidump = f\n[active_space]\nn_electrons = 2\nn_orbitals = 2\n");
    const RunConfig cfg = parse_run_config(in);
    CHECK(cfg.grad_tol == 1e-4);
    CHECK(cfg.broadening_ev == 0.4);
    CHECK(cfg.kind == SpectrumKind::absorption);
    CHECK(cfg.start_orbitals == StartOrbitals::as_given);
    CHECK(cfg.optimize_orbitals);
  }
  SUBCASE("malformed configs are rejected with input errors") {
    auto parse = [](const std::string& text) {
      std::istringstream in(text);
      return parse_run_config(in);
    };
    const std::string base = "[system]\nfcidump = f\n[active_space]\nn_electrons = 2\n";
    CHECK_THROWS_AS(parse(base + "n_orbitals = 2\nbogus = 1\n"), InputError);
    CHECK_THROWS_AS(parse(base + "n_orbitals = two\n"), InputError);
    CHECK_THROWS_AS(parse(base + "n_orbitals = 2\nn_orbitals = 2\n"), InputError);
    CHECK_THROWS_AS(parse(base), InputError);                      // missing n_orbitals
    CHECK_THROWS_AS(parse(base + "n_orbitals = 0\n"), InputError);
    CHECK_THROWS_AS(parse("[active_space]\nn_electrons = 2\nn_orbitals = 2\n"), InputError);
  }
}

TEST_CASE("pipeline excitation energies equal the oracle on the minimal system") {
  const auto outdir = fresh_dir("pipeline_h2");
  const fs::path cfg_path = outdir / "run.cfg";
  write_file(cfg_path, h2_config(outdir / "out"));
  const RunConfig cfg = parse_run_config_file(cfg_path.string());
  CHECK(command_run(cfg, cfg_path.string()) == kExitOk);

  const auto results = nlohmann::json::parse(read_file(outdir / "out" / "results.json"));
  CHECK(results.at("schema_version") == 1);
  CHECK(results.at("ground_state").at("converged") == true);

  const auto mi = parse_fcidump_file(fixture("h2_sto3g.fcidump"));
  const auto h = jordan_wigner(build_hamiltonian(mi), 4);
  const auto exact = eigensolve(h, SectorBasis::particle_sector(4, 2, true));
  CHECK(results.at("ground_state").at("energy_hartree").get<double>() ==
        doctest::Approx(exact.values(0)).epsilon(1e-8));
  for (const auto& st : results.at("states")) {
    const double e = st.at("excitation_hartree").get<double>();
    double best = 1e9;
    for (Eigen::Index k = 1; k < exact.values.size(); ++k)
      best = std::min(best, std::abs(exact.values(k) - exact.values(0) - e));
    CHECK(best < 1e-6);
    CHECK(st.at("excitation_ev").get<double>() == doctest::Approx(e * kHartreeToEv));
  }
  // spectrum.csv layout
  const std::string csv = read_file(outdir / "out" / "spectrum.csv");
  CHECK(csv.substr(0, 20) == "energy_eV,intensity\n");
  // manifest records convergence and checksums
  const auto manifest = nlohmann::json::parse(read_file(outdir / "out" / "manifest.json"));
  CHECK(manifest.at("convergence").at("vqe_converged") == true);
  CHECK(manifest.at("input_checksums").size() == 2);
}

TEST_CASE("identical reruns produce byte-identical result files") {
  const auto base = fresh_dir("rerun");
  for (const char* tag : {"a", "b"}) {
    const fs::path cfg_path = base / (std::string("run_") + tag + ".cfg");
    write_file(cfg_path, h2_config(base / tag));
    const RunConfig cfg = parse_run_config_file(cfg_path.string());
    REQUIRE(command_run(cfg, cfg_path.string()) == kExitOk);
  }
  CHECK(read_file(base / "a" / "results.json") == read_file(base / "b" / "results.json"));
  CHECK(read_file(base / "a" / "spectrum.csv") == read_file(base / "b" / "spectrum.csv"));
}

TEST_CASE("missing fcidump fails with an input error and no partial outputs") {
  const auto outdir = fresh_dir("missing_input");
  RunConfig cfg;
  cfg.fcidump_path = (outdir / "nope.fcidump").string();
  cfg.n_active_electrons = 2;
  cfg.n_active_orbitals = 2;
  cfg.property_paths = {fixture("h2_sto3g_dipole.propints")};
  cfg.output_dir = (outdir / "out").string();
  CHECK_THROWS_AS(command_run(cfg, "none"), InputError);
  CHECK_FALSE(fs::exists(outdir / "out" / "results.json"));
  CHECK_FALSE(fs::exists(outdir / "out" / "spectrum.csv"));
}

TEST_CASE("validate reports named issues") {
  const auto outdir = fresh_dir("validate");
  const fs::path cfg_path = outdir / "run.cfg";
  write_file(cfg_path, h2_config(outdir / "out"));
  RunConfig cfg = parse_run_config_file(cfg_path.string());
  CHECK(validate_inputs(cfg).empty());

  SUBCASE("active space larger than the orbital count") {
    cfg.n_active_orbitals = 5;
    const auto issues = validate_inputs(cfg);
    REQUIRE_FALSE(issues.empty());
    CHECK(issues.front().find("active space") != std::string::npos);
  }
  SUBCASE("corrupted integrals file") {
    const fs::path bad = outdir / "bad.fcidump";
    write_file(bad, "this is not an fcidump\n");
    cfg.fcidump_path = bad.string();
    const auto issues = validate_inputs(cfg);
    REQUIRE_FALSE(issues.empty());
    CHECK(issues.front().find("fcidump") != std::string::npos);
  }
  SUBCASE("spectrum kind without the matching integrals") {
    cfg.kind = SpectrumKind::ecd;
    const auto issues = validate_inputs(cfg);
    REQUIRE_FALSE(issues.empty());
    CHECK(issues.front().find("magnetic") != std::string::npos);
  }
}

TEST_CASE("oracle subcommand writes the reference table") {
  const auto outdir = fresh_dir("oracle_cmd");
  const fs::path cfg_path = outdir / "run.cfg";
  write_file(cfg_path, h2_config(outdir / "out"));
  const RunConfig cfg = parse_run_config_file(cfg_path.string());
  CHECK(command_oracle(cfg) == kExitOk);
  const auto j = nlohmann::json::parse(read_file(outdir / "out" / "oracle.json"));
  REQUIRE(j.at("states").size() > 1);
  const auto mi = parse_fcidump_file(fixture("h2_sto3g.fcidump"));
  const auto h = jordan_wigner(build_hamiltonian(mi), 4);
  const auto exact = eigensolve(h, SectorBasis::particle_sector(4, 2, true));
  CHECK(j.at("states")[0].at("energy_hartree").get<double>() ==
        doctest::Approx(exact.values(0)).epsilon(1e-10));
}

TEST_CASE("binary exit codes") {
  const auto outdir = fresh_dir("binary");
  const fs::path cfg_path = outdir / "run.cfg";
  write_file(cfg_path, h2_config(outdir / "out"));
  CHECK(run_binary("validate " + cfg_path.string()) == kExitOk);
  CHECK(run_binary("run " + cfg_path.string()) == kExitOk);
  CHECK(fs::exists(outdir / "out" / "results.json"));
  CHECK(run_binary("oracle " + cfg_path.string()) == kExitOk);
  CHECK(run_binary("run " + (outdir / "does_not_exist.cfg").string()) == kExitInput);
  CHECK(run_binary("frobnicate x") == kExitInput);

  // convergence starvation surfaces as the dedicated exit code
  const fs::path starved = outdir / "starved.cfg";
  write_file(starved, h2_config(outdir / "out2") + "[optimizer]\nmax_iterations = 1\n");
  CHECK(run_binary("run " + starved.string()) == kExitConvergence);
}

TEST_CASE("ecd pipeline emits signed intensities") {
  const auto outdir = fresh_dir("ecd");
  const fs::path cfg_path = outdir / "run.cfg";
  write_file(cfg_path,
             "[system]\n"
             "fcidump = " + fixture("h4_sto3g.fcidump") + "\n"
             "properties = " + fixture("h4_sto3g_dipole.propints") + " " +
                 fixture("h4_sto3g_magdip.propints") + "\n"
             "[active_space]\n"
             "n_electrons = 4\n"
             "n_orbitals = 4\n"
             "[spectrum]\n"
             "kind = ecd\n"
             "grid_min_ev = 0\n"
             "grid_max_ev = 45\n"
             "grid_points = 451\n"
             "[output]\n"
             "directory = " + (outdir / "out").string() + "\n");
  const RunConfig cfg = parse_run_config_file(cfg_path.string());
  REQUIRE(command_run(cfg, cfg_path.string()) == kExitOk);
  const auto results = nlohmann::json::parse(read_file(outdir / "out" / "results.json"));
  double max_abs_rs = 0.0;
  for (const auto& st : results.at("states"))
    max_abs_rs = std::max(max_abs_rs, std::abs(st.at("rotational_strength").get<double>()));
  CHECK(max_abs_rs > 1e-8);  // chiral fixture geometry
}
