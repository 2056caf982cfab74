#include "ooqeom/pipeline.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ooqeom/jordan_wigner.hpp"
#include "ooqeom/oracle.hpp"

namespace ooq {

namespace {

using json = nlohmann::ordered_json;

ActiveSpaceSpec derive_spec(const RunConfig& cfg, const MolecularIntegrals& mi) {
  const int frozen = mi.n_electrons - cfg.n_active_electrons;
  if (frozen < 0 || frozen % 2 != 0) {
    throw InputError("active electron count incompatible with the molecular electron count");
  }
  ActiveSpaceSpec spec;
  spec.n_inactive = frozen / 2;
  spec.n_active = cfg.n_active_orbitals;
  spec.n_virtual = mi.n_spatial - spec.n_inactive - spec.n_active;
  if (spec.n_virtual < 0) {
    throw InputError("active space does not fit within the orbital count of the integrals");
  }
  spec.validate(mi);
  return spec;
}

struct LoadedProperties {
  std::optional<PropertyIntegrals> electric;
  std::optional<PropertyIntegrals> magnetic;
};

LoadedProperties load_properties(const RunConfig& cfg, const MolecularIntegrals& mi) {
  LoadedProperties out;
  for (const auto& path : cfg.property_paths) {
    PropertyIntegrals pi = parse_propints_file(path);
    if (pi.components[0].rows() != mi.n_spatial) {
      throw InputError("property file '" + path + "' has a different orbital count than the "
                       "integrals");
    }
    auto& slot = pi.kind == PropertyKind::electric_dipole ? out.electric : out.magnetic;
    if (slot.has_value()) {
      throw InputError("duplicate " + to_string(pi.kind) + " property file: " + path);
    }
    slot = std::move(pi);
  }
  return out;
}

/// Re-throws stage errors with the stage name attached, preserving the type.
template <typename F>
auto stage(const std::string& name, std::vector<std::pair<std::string, double>>& times, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  auto done = [&] {
    times.emplace_back(name, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                                 .count());
  };
  try {
    auto result = f();
    done();
    return result;
  } catch (const InputError& e) {
    throw InputError("[" + name + "] " + e.what());
  } catch (const ConvergenceError& e) {
    throw ConvergenceError("[" + name + "] " + e.what());
  } catch (const InstabilityError& e) {
    throw InstabilityError("[" + name + "] " + e.what());
  }
}

json complex_json(const cplx& c) { return json::array({c.real(), c.imag()}); }

json moment_json(const Eigen::Vector3cd& v) {
  return json::array({complex_json(v(0)), complex_json(v(1)), complex_json(v(2))});
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string file_checksum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file for checksum: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(ss.str())));
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write output file: " + path.string());
  out << text;
}

constexpr const char* kVersion = "1.0.0";

}  // namespace

PipelineResult run_pipeline(const RunConfig& cfg) {
  cfg.validate();
  PipelineResult res;
  auto& times = res.stage_seconds;

  const MolecularIntegrals mi =
      stage("ingest", times, [&] { return parse_fcidump_file(cfg.fcidump_path); });
  res.spec = derive_spec(cfg, mi);
  res.n_electrons = mi.n_electrons;
  const LoadedProperties props = stage("ingest", times, [&] { return load_properties(cfg, mi); });
  if (cfg.kind == SpectrumKind::absorption && !props.electric.has_value()) {
    throw InputError("an absorption spectrum needs electric dipole property integrals");
  }
  if (cfg.kind == SpectrumKind::ecd &&
      !(props.electric.has_value() && props.magnetic.has_value())) {
    throw InputError("an ECD spectrum needs electric and magnetic dipole property integrals");
  }

  res.vqe = stage("vqe", times, [&] {
    VqeOptions opts;
    opts.circuit.grad_tol = opts.joint.grad_tol = cfg.grad_tol;
    opts.circuit.max_iterations = opts.joint.max_iterations = cfg.max_iterations;
    opts.optimize_orbitals = cfg.optimize_orbitals;
    opts.start_orbitals = cfg.start_orbitals;
    return run_vqe(mi, res.spec, opts);
  });

  const auto basis =
      stage("qeom", times, [&] { return build_eom_basis(res.spec, mi.n_electrons); });
  res.labels = basis.labels;
  const PauliSum h_full = stage("qeom", times, [&] {
    return jordan_wigner(build_hamiltonian(res.vqe.integrals), res.spec.n_qubits_full());
  });
  const EnergyModel model(res.vqe.integrals, res.spec);
  const ProjectedEvaluator ev(h_full, model.state(res.vqe.theta), res.spec);
  const EomMatrices matrices =
      stage("qeom", times, [&] { return build_eom_matrices(basis, ev); });
  res.grad_diag = gradient_diagnostic(basis, ev);
  res.max_delta = matrices.max_delta();
  res.max_sigma_qg = matrices.max_sigma_qg();
  res.max_a_nonhermiticity = (matrices.A - matrices.A.adjoint()).cwiseAbs().maxCoeff();
  res.max_b_asymmetry =
      (matrices.B - matrices.B.transpose()).cwiseAbs().maxCoeff();
  res.max_sigma_nonhermiticity =
      (matrices.Sigma - matrices.Sigma.adjoint()).cwiseAbs().maxCoeff();
  res.sol = stage("qeom", times, [&] { return solve_eom(matrices, cfg.linear_dep_tol); });
  res.max_pairing_dev = max_pairing_deviation(res.sol);

  const auto moments = stage("properties", times, [&] {
    const PropertyIntegrals* el = nullptr;
    const PropertyIntegrals* mg = nullptr;
    std::optional<PropertyIntegrals> el_rot, mg_rot;
    if (props.electric) {
      el_rot = transform_property(*props.electric, res.vqe.transform);
      el = &*el_rot;
      res.has_electric = true;
    }
    if (props.magnetic) {
      mg_rot = transform_property(*props.magnetic, res.vqe.transform);
      mg = &*mg_rot;
      res.has_magnetic = true;
    }
    return transition_moments(basis, ev, res.sol, el, mg);
  });

  std::vector<Stick> sticks;
  for (Eigen::Index k = 0; k < res.sol.energies.size(); ++k) {
    StateRecord st;
    st.excitation_hartree = res.sol.energies(k);
    st.excitation_ev = res.sol.energies(k) * kHartreeToEv;
    st.moments = moments[static_cast<std::size_t>(k)];
    if (res.has_electric) {
      st.oscillator_strength = oscillator_strength(st.excitation_hartree, st.moments.electric);
    }
    if (res.has_electric && res.has_magnetic) {
      st.rotational_strength = rotational_strength(st.moments.electric, st.moments.magnetic);
    }
    sticks.push_back({st.excitation_ev, cfg.kind == SpectrumKind::absorption
                                            ? st.oscillator_strength
                                            : st.rotational_strength});
    res.states.push_back(std::move(st));
  }
  if (sticks.empty()) {
    std::cerr << "warning: no excited states retained; the spectrum is empty\n";
  }
  res.spectrum = stage("spectrum", times, [&] {
    return convolve(sticks, cfg.broadening_ev, cfg.grid_min_ev, cfg.grid_max_ev,
                    cfg.grid_points);
  });
  return res;
}

std::string results_json_text(const RunConfig& cfg, const PipelineResult& res) {
  json j;
  j["schema_version"] = 1;
  j["generator"] = {{"name", "ooqeom"}, {"version", kVersion}};

  j["system"] = {{"fcidump", cfg.fcidump_path},
                 {"n_electrons", res.n_electrons},
                 {"n_spatial", res.spec.n_spatial()},
                 {"active_space",
                  {{"n_electrons", cfg.n_active_electrons},
                   {"n_orbitals", cfg.n_active_orbitals},
                   {"n_inactive", res.spec.n_inactive},
                   {"n_virtual", res.spec.n_virtual}}}};

  j["ground_state"] = {{"energy_hartree", res.vqe.energy},
                       {"converged", res.vqe.converged},
                       {"grad_inf_norm", res.vqe.grad_inf_norm},
                       {"iterations_stage1", res.vqe.iterations_stage1},
                       {"iterations_stage2", res.vqe.iterations_stage2},
                       {"energy_trace", res.vqe.trace}};

  json states = json::array();
  for (const auto& st : res.states) {
    json s = {{"excitation_hartree", st.excitation_hartree},
              {"excitation_ev", st.excitation_ev}};
    if (res.has_electric) {
      s["oscillator_strength"] = st.oscillator_strength;
      s["electric_moment"] = moment_json(st.moments.electric);
    }
    if (res.has_magnetic) {
      s["magnetic_moment"] = moment_json(st.moments.magnetic);
      if (res.has_electric) s["rotational_strength"] = st.rotational_strength;
    }
    s["metric_norm"] = st.moments.norm_denominator * st.moments.norm_denominator;
    states.push_back(std::move(s));
  }
  j["states"] = std::move(states);

  json diag;
  diag["max_gradient_diagnostic"] =
      res.grad_diag.size() ? res.grad_diag.maxCoeff() : 0.0;
  json per_op = json::array();
  for (Eigen::Index i = 0; i < res.grad_diag.size(); ++i) {
    per_op.push_back({{"operator", res.labels[static_cast<std::size_t>(i)]},
                      {"value", res.grad_diag(i)}});
  }
  diag["gradient_diagnostic"] = std::move(per_op);
  diag["max_delta"] = res.max_delta;
  diag["max_sigma_qg"] = res.max_sigma_qg;
  diag["max_a_nonhermiticity"] = res.max_a_nonhermiticity;
  diag["max_b_asymmetry"] = res.max_b_asymmetry;
  diag["max_sigma_nonhermiticity"] = res.max_sigma_nonhermiticity;
  diag["max_pairing_deviation"] = res.max_pairing_dev;
  diag["n_metric_kept"] = res.sol.n_metric_kept;
  j["diagnostics"] = std::move(diag);

  return j.dump(2) + "\n";
}

std::string spectrum_csv_text(const Spectrum& sp) {
  std::string out = "energy_eV,intensity\n";
  char buf[64];
  for (std::size_t i = 0; i < sp.grid_ev.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12e,%.12e\n", sp.grid_ev[i], sp.intensity[i]);
    out += buf;
  }
  return out;
}

std::string manifest_json_text(const RunConfig& cfg, const PipelineResult& res,
                               const std::string& config_path) {
  json j;
  j["version"] = kVersion;
  j["config_file"] = config_path;
  j["config"] = json(cfg.raw);

  json times = json::array();
  for (const auto& [name, sec] : res.stage_seconds) {
    times.push_back({{"stage", name}, {"seconds", sec}});
  }
  j["wall_times"] = std::move(times);

  j["convergence"] = {{"vqe_converged", res.vqe.converged},
                      {"vqe_grad_inf_norm", res.vqe.grad_inf_norm},
                      {"n_states", res.sol.energies.size()},
                      {"n_metric_kept", res.sol.n_metric_kept}};

  json inputs;
  inputs[cfg.fcidump_path] = file_checksum(cfg.fcidump_path);
  for (const auto& p : cfg.property_paths) inputs[p] = file_checksum(p);
  j["input_checksums"] = std::move(inputs);

  json outputs;
  outputs["results.json"] = "fnv1a64:" + [&] {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(results_json_text(cfg, res))));
    return std::string(buf);
  }();
  outputs["spectrum.csv"] = "fnv1a64:" + [&] {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(spectrum_csv_text(res.spectrum))));
    return std::string(buf);
  }();
  j["output_checksums"] = std::move(outputs);

  return j.dump(2) + "\n";
}

int command_run(const RunConfig& cfg, const std::string& config_path) {
  const PipelineResult res = run_pipeline(cfg);
  const std::string results = results_json_text(cfg, res);
  const std::string csv = spectrum_csv_text(res.spectrum);
  const std::string manifest = manifest_json_text(cfg, res, config_path);

  const std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);
  write_file(dir / "results.json", results);
  write_file(dir / "spectrum.csv", csv);
  write_file(dir / "manifest.json", manifest);

  std::cout << "ground state energy: " << res.vqe.energy << " Hartree"
            << (res.vqe.converged ? "" : "  (NOT converged)") << "\n"
            << res.states.size() << " excited states; outputs written to " << cfg.output_dir
            << "\n";
  if (!res.vqe.converged) {
    std::cerr << "error: optimizer missed the gradient criterion (|g| = "
              << res.vqe.grad_inf_norm << ")\n";
    return kExitConvergence;
  }
  return kExitOk;
}

std::vector<std::string> validate_inputs(const RunConfig& cfg) {
  std::vector<std::string> issues;
  MolecularIntegrals mi;
  bool have_mi = false;
  try {
    mi = parse_fcidump_file(cfg.fcidump_path);
    have_mi = true;
  } catch (const Error& e) {
    issues.emplace_back(std::string("fcidump: ") + e.what());
  }
  if (have_mi) {
    for (const auto& p : mi.check_invariants()) issues.emplace_back("fcidump: " + p);
    try {
      derive_spec(cfg, mi);
    } catch (const Error& e) {
      issues.emplace_back(std::string("active space: ") + e.what());
    }
  }
  bool saw_electric = false, saw_magnetic = false;
  for (const auto& path : cfg.property_paths) {
    try {
      const PropertyIntegrals pi = parse_propints_file(path);
      for (const auto& p : pi.check_invariants()) issues.emplace_back(path + ": " + p);
      if (have_mi && pi.components[0].rows() != mi.n_spatial) {
        issues.emplace_back(path + ": orbital count differs from the integrals");
      }
      (pi.kind == PropertyKind::electric_dipole ? saw_electric : saw_magnetic) = true;
    } catch (const Error& e) {
      issues.emplace_back(path + ": " + e.what());
    }
  }
  if (cfg.kind == SpectrumKind::absorption && !saw_electric) {
    issues.emplace_back("config: absorption spectrum requested without electric dipole "
                        "integrals");
  }
  if (cfg.kind == SpectrumKind::ecd && !(saw_electric && saw_magnetic)) {
    issues.emplace_back("config: ECD spectrum requested without electric and magnetic dipole "
                        "integrals");
  }
  return issues;
}

int command_validate(const RunConfig& cfg) {
  const auto issues = validate_inputs(cfg);
  if (issues.empty()) {
    std::cout << "inputs valid\n";
    return kExitOk;
  }
  for (const auto& issue : issues) std::cout << "issue: " << issue << "\n";
  return kExitInput;
}

int command_oracle(const RunConfig& cfg) {
  const MolecularIntegrals mi = parse_fcidump_file(cfg.fcidump_path);
  const ActiveSpaceSpec spec = derive_spec(cfg, mi);
  const LoadedProperties props = load_properties(cfg, mi);

  const int nqa = spec.n_qubits_active();
  const PauliSum h_act = active_hamiltonian(mi, spec);
  const ExactSpectrum exact = eigensolve(
      h_act, SectorBasis::particle_sector(nqa, spec.n_active_electrons(mi.n_electrons), true));

  // active-block property operators on the active qubits; a common frozen
  // core contributes nothing to off-diagonal matrix elements
  auto active_op = [&](const PropertyIntegrals& pi, int c, double sign) {
    const Eigen::MatrixXd block =
        pi.components[static_cast<std::size_t>(c)].block(spec.n_inactive, spec.n_inactive,
                                                         spec.n_active, spec.n_active);
    return sign * one_electron_qubit_operator(block, nqa);
  };

  json states = json::array();
  std::printf("%4s %18s %12s %12s %12s\n", "k", "E_total_Ha", "dE_eV", "f", "rs");
  for (Eigen::Index k = 0; k < exact.values.size(); ++k) {
    const double de = exact.values(k) - exact.values(0);
    double f = 0.0, rs = 0.0;
    if (k > 0 && props.electric) {
      Eigen::Vector3cd mu = Eigen::Vector3cd::Zero(), mm = Eigen::Vector3cd::Zero();
      for (int c = 0; c < 3; ++c) {
        mu(c) = exact_matrix_element(exact, active_op(*props.electric, c, -1.0), 0,
                                     static_cast<int>(k));
        if (props.magnetic) {
          mm(c) = exact_matrix_element(exact, active_op(*props.magnetic, c, +1.0), 0,
                                       static_cast<int>(k));
        }
      }
      f = oscillator_strength(de, mu);
      if (props.magnetic) rs = rotational_strength(mu, mm);
    }
    std::printf("%4lld %18.10f %12.6f %12.6f %12.6f\n", static_cast<long long>(k),
                exact.values(k), de * kHartreeToEv, f, rs);
    states.push_back({{"energy_hartree", exact.values(k)},
                      {"excitation_hartree", de},
                      {"excitation_ev", de * kHartreeToEv},
                      {"oscillator_strength", f},
                      {"rotational_strength", rs}});
  }

  json j;
  j["version"] = kVersion;
  j["method"] = "exact diagonalization (active space, orbitals as given)";
  j["states"] = std::move(states);
  std::filesystem::create_directories(cfg.output_dir);
  write_file(std::filesystem::path(cfg.output_dir) / "oracle.json", j.dump(2) + "\n");
  return kExitOk;
}

}  // namespace ooq
