#include "ooqeom/config.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ooqeom/common.hpp"

namespace ooq {

std::string to_string(SpectrumKind k) {
  return k == SpectrumKind::absorption ? "absorption" : "ecd";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw InputError("config key '" + key + "': expected a number, got '" + value + "'");
  }
}

long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw InputError("config key '" + key + "': expected an integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  throw InputError("config key '" + key + "': expected true/false, got '" + value + "'");
}

}  // namespace

void RunConfig::validate() const {
  if (fcidump_path.empty()) throw InputError("config: system.fcidump is required");
  if (n_active_electrons <= 0 || n_active_electrons % 2 != 0)
    throw InputError("config: active_space.n_electrons must be a positive even integer");
  if (n_active_orbitals <= 0)
    throw InputError("config: active_space.n_orbitals must be positive");
  if (n_active_electrons > 2 * n_active_orbitals)
    throw InputError("config: more active electrons than the active orbitals can hold");
  if (!(grad_tol > 0)) throw InputError("config: optimizer.grad_tol must be positive");
  if (max_iterations <= 0) throw InputError("config: optimizer.max_iterations must be positive");
  if (!(linear_dep_tol > 0)) throw InputError("config: qeom.linear_dep_tol must be positive");
  if (!(broadening_ev > 0)) throw InputError("config: spectrum.broadening_ev must be positive");
  if (grid_points < 2) throw InputError("config: spectrum.grid_points must be at least 2");
  if (!(grid_max_ev > grid_min_ev))
    throw InputError("config: spectrum grid bounds must satisfy min < max");
  if (output_dir.empty()) throw InputError("config: output.directory must not be empty");
}

RunConfig parse_run_config(std::istream& in) {
  RunConfig cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw InputError("config line " + std::to_string(lineno) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (cfg.raw.count(key))
      throw InputError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    cfg.raw[key] = value;

    if (key == "system.fcidump") {
      cfg.fcidump_path = value;
    } else if (key == "system.properties") {
      std::istringstream ss(value);
      std::string p;
      while (ss >> p) cfg.property_paths.push_back(p);
    } else if (key == "active_space.n_electrons") {
      cfg.n_active_electrons = static_cast<int>(parse_int(key, value));
    } else if (key == "active_space.n_orbitals") {
      cfg.n_active_orbitals = static_cast<int>(parse_int(key, value));
    } else if (key == "orbitals.start") {
      if (value == "as_given")
        cfg.start_orbitals = StartOrbitals::as_given;
      else if (value == "mp2_natural")
        cfg.start_orbitals = StartOrbitals::mp2_natural;
      else
        throw InputError("config key '" + key + "': expected as_given or mp2_natural");
    } else if (key == "orbitals.optimize") {
      cfg.optimize_orbitals = parse_bool(key, value);
    } else if (key == "optimizer.max_iterations") {
      cfg.max_iterations = static_cast<int>(parse_int(key, value));
    } else if (key == "optimizer.grad_tol") {
      cfg.grad_tol = parse_double(key, value);
    } else if (key == "qeom.linear_dep_tol") {
      cfg.linear_dep_tol = parse_double(key, value);
    } else if (key == "spectrum.kind") {
      if (value == "absorption")
        cfg.kind = SpectrumKind::absorption;
      else if (value == "ecd")
        cfg.kind = SpectrumKind::ecd;
      else
        throw InputError("config key '" + key + "': expected absorption or ecd");
    } else if (key == "spectrum.broadening_ev") {
      cfg.broadening_ev = parse_double(key, value);
    } else if (key == "spectrum.grid_min_ev") {
      cfg.grid_min_ev = parse_double(key, value);
    } else if (key == "spectrum.grid_max_ev") {
      cfg.grid_max_ev = parse_double(key, value);
    } else if (key == "spectrum.grid_points") {
      cfg.grid_points = static_cast<int>(parse_int(key, value));
    } else if (key == "output.directory") {
      cfg.output_dir = value;
    } else if (key == "run.seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else {
      throw InputError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig parse_run_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  RunConfig cfg = parse_run_config(in);
  const auto base = std::filesystem::path(path).parent_path();
  auto resolve = [&](std::string& p) {
    if (!p.empty() && std::filesystem::path(p).is_relative()) p = (base / p).string();
  };
  resolve(cfg.fcidump_path);
  for (auto& p : cfg.property_paths) resolve(p);
  resolve(cfg.output_dir);
  return cfg;
}

}  // namespace ooq
