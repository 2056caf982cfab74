#include "ooqeom/integrals.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace ooq {

namespace {

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

/// Extract "KEY= <int>" from a namelist header blob.
bool header_int(const std::string& header, const std::string& key, long& out) {
  auto pos = header.find(key);
  while (pos != std::string::npos) {
    // must be a token boundary
    if (pos == 0 || !std::isalnum(static_cast<unsigned char>(header[pos - 1]))) {
      auto eq = header.find('=', pos + key.size());
      if (eq == std::string::npos) return false;
      const char* begin = header.c_str() + eq + 1;
      char* end = nullptr;
      const long v = std::strtol(begin, &end, 10);
      if (end == begin) return false;
      out = v;
      return true;
    }
    pos = header.find(key, pos + 1);
  }
  return false;
}

double parse_fortran_real(std::string tok, int line_no) {
  for (auto& c : tok)
    if (c == 'D' || c == 'd') c = 'E';
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw InputError("FCIDUMP line " + std::to_string(line_no) + ": bad real '" + tok + "'");
  }
  if (used != tok.size())
    throw InputError("FCIDUMP line " + std::to_string(line_no) + ": bad real '" + tok + "'");
  return v;
}

void set_g_all_perms(MolecularIntegrals& mi, int p, int q, int r, int s, double v) {
  mi.g_at(p, q, r, s) = v;
  mi.g_at(q, p, r, s) = v;
  mi.g_at(p, q, s, r) = v;
  mi.g_at(q, p, s, r) = v;
  mi.g_at(r, s, p, q) = v;
  mi.g_at(s, r, p, q) = v;
  mi.g_at(r, s, q, p) = v;
  mi.g_at(s, r, q, p) = v;
}

}  // namespace

std::vector<std::string> MolecularIntegrals::check_invariants(double tol) const {
  std::vector<std::string> issues;
  for (int p = 0; p < n_spatial; ++p)
    for (int q = 0; q < p; ++q)
      if (std::abs(h(p, q) - h(q, p)) > tol) {
        issues.push_back("h is not symmetric at (" + std::to_string(p) + "," +
                         std::to_string(q) + ")");
        break;
      }
  for (int p = 0; p < n_spatial && issues.size() < 8; ++p)
    for (int q = 0; q < n_spatial; ++q)
      for (int r = 0; r < n_spatial; ++r)
        for (int s = 0; s < n_spatial; ++s) {
          const double v = g_at(p, q, r, s);
          if (std::abs(v - g_at(q, p, r, s)) > tol || std::abs(v - g_at(p, q, s, r)) > tol ||
              std::abs(v - g_at(r, s, p, q)) > tol) {
            issues.push_back("g lacks 8-fold symmetry at (" + std::to_string(p) + "," +
                             std::to_string(q) + "," + std::to_string(r) + "," +
                             std::to_string(s) + ")");
            p = q = r = n_spatial;  // report once
            break;
          }
        }
  if (n_electrons < 0 || n_electrons > 2 * n_spatial)
    issues.push_back("electron count " + std::to_string(n_electrons) +
                     " incompatible with " + std::to_string(n_spatial) + " orbitals");
  return issues;
}

std::string to_string(PropertyKind k) {
  return k == PropertyKind::electric_dipole ? "electric_dipole" : "magnetic_dipole";
}

std::vector<std::string> PropertyIntegrals::check_invariants(double tol) const {
  std::vector<std::string> issues;
  const bool symmetric = kind == PropertyKind::electric_dipole;
  const char* names = "xyz";
  for (int c = 0; c < 3; ++c) {
    const auto& M = components[c];
    const double dev = symmetric ? (M - M.transpose()).cwiseAbs().maxCoeff()
                                 : (M + M.transpose()).cwiseAbs().maxCoeff();
    if (dev > tol)
      issues.push_back(std::string(1, names[c]) + " component violates " +
                       (symmetric ? "symmetry" : "antisymmetry") + " by " + std::to_string(dev));
  }
  return issues;
}

OrbitalRotation OrbitalRotation::zero(int n) {
  OrbitalRotation r;
  r.kappa = Eigen::MatrixXd::Zero(n, n);
  return r;
}

OrbitalRotation OrbitalRotation::for_blocks(int n_inactive, int n_active, int n_virtual) {
  const int n = n_inactive + n_active + n_virtual;
  OrbitalRotation r = zero(n);
  for (int v = n_inactive; v < n_inactive + n_active; ++v)
    for (int i = 0; i < n_inactive; ++i) r.free_parameters.emplace_back(v, i);
  for (int a = n_inactive + n_active; a < n; ++a)
    for (int i = 0; i < n_inactive; ++i) r.free_parameters.emplace_back(a, i);
  for (int a = n_inactive + n_active; a < n; ++a)
    for (int v = n_inactive; v < n_inactive + n_active; ++v) r.free_parameters.emplace_back(a, v);
  return r;
}

void OrbitalRotation::set_parameters(const Eigen::VectorXd& values) {
  if (values.size() != static_cast<Eigen::Index>(free_parameters.size()))
    throw Error("OrbitalRotation: parameter count mismatch");
  for (std::size_t k = 0; k < free_parameters.size(); ++k) {
    const auto [p, q] = free_parameters[k];
    kappa(p, q) = values[static_cast<Eigen::Index>(k)];
    kappa(q, p) = -values[static_cast<Eigen::Index>(k)];
  }
}

Eigen::VectorXd OrbitalRotation::parameters() const {
  Eigen::VectorXd v(free_parameters.size());
  for (std::size_t k = 0; k < free_parameters.size(); ++k)
    v[static_cast<Eigen::Index>(k)] = kappa(free_parameters[k].first, free_parameters[k].second);
  return v;
}

MolecularIntegrals parse_fcidump(std::istream& in) {
  std::string line, header;
  int line_no = 0;
  bool header_done = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string u = upper(line);
    header += " " + u;
    if (u.find("&END") != std::string::npos || u.find("$END") != std::string::npos ||
        u.find('/') != std::string::npos) {
      header_done = true;
      break;
    }
  }
  if (!header_done) throw InputError("FCIDUMP: header never terminated (&END or / missing)");
  long norb = 0, nelec = 0;
  if (!header_int(header, "NORB", norb) || norb <= 0)
    throw InputError("FCIDUMP: missing or invalid NORB in header");
  if (!header_int(header, "NELEC", nelec) || nelec < 0)
    throw InputError("FCIDUMP: missing or invalid NELEC in header");

  MolecularIntegrals mi;
  mi.n_spatial = static_cast<int>(norb);
  mi.n_electrons = static_cast<int>(nelec);
  mi.h = Eigen::MatrixXd::Zero(mi.n_spatial, mi.n_spatial);
  mi.g.assign(static_cast<std::size_t>(mi.n_spatial) * mi.n_spatial * mi.n_spatial * mi.n_spatial,
              0.0);

  auto canonical4 = [n = mi.n_spatial](int p, int q, int r, int s) {
    if (p < q) std::swap(p, q);
    if (r < s) std::swap(r, s);
    if (std::tie(p, q) < std::tie(r, s)) {
      std::swap(p, r);
      std::swap(q, s);
    }
    return ((static_cast<std::size_t>(p) * n + q) * n + r) * n + s;
  };
  std::vector<bool> g_seen(mi.g.size(), false);
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> h_seen =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(mi.n_spatial, mi.n_spatial,
                                                                    false);
  bool e_nuc_seen = false;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string vtok;
    if (!(ls >> vtok)) continue;  // blank line
    const double value = parse_fortran_real(vtok, line_no);
    int i, j, k, l;
    if (!(ls >> i >> j >> k >> l))
      throw InputError("FCIDUMP line " + std::to_string(line_no) + ": expected four indices");
    for (int idx : {i, j, k, l})
      if (idx < 0 || idx > mi.n_spatial)
        throw InputError("FCIDUMP line " + std::to_string(line_no) + ": index " +
                         std::to_string(idx) + " exceeds NORB=" + std::to_string(mi.n_spatial));
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      if (e_nuc_seen && std::abs(mi.e_nuc - value) > 1e-10)
        throw InputError("FCIDUMP line " + std::to_string(line_no) +
                         ": conflicting core-energy entries");
      mi.e_nuc = value;
      e_nuc_seen = true;
    } else if (j == 0 && k == 0 && l == 0) {
      // orbital-energy record; read and ignored
    } else if (k == 0 && l == 0) {
      if (i == 0 || j == 0)
        throw InputError("FCIDUMP line " + std::to_string(line_no) + ": malformed index pattern");
      const int p = i - 1, q = j - 1;
      if (h_seen(p, q) && std::abs(mi.h(p, q) - value) > 1e-10)
        throw InputError("FCIDUMP line " + std::to_string(line_no) +
                         ": conflicting h entry for (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
      mi.h(p, q) = mi.h(q, p) = value;
      h_seen(p, q) = h_seen(q, p) = true;
    } else {
      if (i == 0 || j == 0 || k == 0 || l == 0)
        throw InputError("FCIDUMP line " + std::to_string(line_no) + ": malformed index pattern");
      const int p = i - 1, q = j - 1, r = k - 1, s = l - 1;
      const std::size_t canon = canonical4(p, q, r, s);
      if (g_seen[canon] && std::abs(mi.g[canon] - value) > 1e-10)
        throw InputError("FCIDUMP line " + std::to_string(line_no) +
                         ": conflicting integral entry");
      set_g_all_perms(mi, p, q, r, s, value);
      g_seen[canon] = true;
    }
  }
  return mi;
}

MolecularIntegrals parse_fcidump_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open FCIDUMP file: " + path);
  return parse_fcidump(in);
}

void serialize_fcidump(const MolecularIntegrals& mi, std::ostream& out) {
  const int n = mi.n_spatial;
  out << "&FCI NORB=" << n << ",NELEC=" << mi.n_electrons << ",MS2=0,\n&END\n";
  char buf[64];
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r <= p; ++r)
        for (int s = 0; s <= r; ++s) {
          if (std::tie(p, q) < std::tie(r, s)) continue;
          const double v = mi.g_at(p, q, r, s);
          if (std::abs(v) < 1e-15) continue;
          std::snprintf(buf, sizeof(buf), "%23.16e %3d %3d %3d %3d\n", v, p + 1, q + 1, r + 1,
                        s + 1);
          out << buf;
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q) {
      if (std::abs(mi.h(p, q)) < 1e-15) continue;
      std::snprintf(buf, sizeof(buf), "%23.16e %3d %3d   0   0\n", mi.h(p, q), p + 1, q + 1);
      out << buf;
    }
  std::snprintf(buf, sizeof(buf), "%23.16e   0   0   0   0\n", mi.e_nuc);
  out << buf;
}

PropertyIntegrals parse_propints(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("PROPINTS: empty file");
  std::istringstream hs(line);
  std::string magic, kind_str, norb_tok, origin_tok;
  hs >> magic >> kind_str >> norb_tok;
  if (magic != "PROPINTS") throw InputError("PROPINTS: bad magic '" + magic + "'");
  PropertyIntegrals pi;
  if (kind_str == "electric_dipole")
    pi.kind = PropertyKind::electric_dipole;
  else if (kind_str == "magnetic_dipole")
    pi.kind = PropertyKind::magnetic_dipole;
  else
    throw InputError("PROPINTS: unknown kind '" + kind_str + "'");
  if (norb_tok.rfind("NORB=", 0) != 0) throw InputError("PROPINTS: expected NORB=<n>");
  const int n = std::stoi(norb_tok.substr(5));
  if (n <= 0) throw InputError("PROPINTS: invalid NORB");
  hs >> origin_tok;
  if (origin_tok.rfind("ORIGIN=", 0) != 0) throw InputError("PROPINTS: expected ORIGIN=<x> <y> <z>");
  pi.gauge_origin[0] = std::stod(origin_tok.substr(7));
  if (!(hs >> pi.gauge_origin[1] >> pi.gauge_origin[2]))
    throw InputError("PROPINTS: incomplete gauge origin");

  for (auto& M : pi.components) M = Eigen::MatrixXd::Zero(n, n);
  const bool symmetric = pi.kind == PropertyKind::electric_dipole;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string comp;
    int i, j;
    double v;
    if (!(ls >> comp)) continue;
    if (!(ls >> i >> j >> v) || comp.size() != 1 || comp.find_first_of("xyz") != 0)
      throw InputError("PROPINTS line " + std::to_string(line_no) + ": malformed entry");
    if (i < 1 || i > n || j < 1 || j > n)
      throw InputError("PROPINTS line " + std::to_string(line_no) + ": index out of range");
    auto& M = pi.components[static_cast<std::size_t>(comp[0] - 'x')];
    M(i - 1, j - 1) = v;
    if (symmetric) M(j - 1, i - 1) = v;
  }
  if (!symmetric) {
    // Only one triangle may have been stored; complete by antisymmetry where
    // the mirror entry is absent.
    for (auto& M : pi.components)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
          if (M(i, j) != 0.0 && M(j, i) == 0.0) M(j, i) = -M(i, j);
          if (M(j, i) != 0.0 && M(i, j) == 0.0) M(i, j) = -M(j, i);
        }
  }
  const auto issues = pi.check_invariants();
  if (!issues.empty()) throw InputError("PROPINTS: " + issues.front());
  return pi;
}

PropertyIntegrals parse_propints_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open property-integral file: " + path);
  return parse_propints(in);
}

void serialize_propints(const PropertyIntegrals& pi, std::ostream& out) {
  const int n = static_cast<int>(pi.components[0].rows());
  const bool symmetric = pi.kind == PropertyKind::electric_dipole;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "PROPINTS %s NORB=%d ORIGIN=%.10f %.10f %.10f\n",
                to_string(pi.kind).c_str(), n, pi.gauge_origin[0], pi.gauge_origin[1],
                pi.gauge_origin[2]);
  out << buf;
  const char* names = "xyz";
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < (symmetric ? i + 1 : n); ++j) {
        const double v = pi.components[c](i, j);
        if (std::abs(v) < 1e-15) continue;
        std::snprintf(buf, sizeof(buf), "%c %d %d %23.16e\n", names[c], i + 1, j + 1, v);
        out << buf;
      }
}

FermionOperator build_hamiltonian(const MolecularIntegrals& mi) {
  FermionOperator hamil;
  if (std::abs(mi.e_nuc) > 0.0) hamil.add_term(mi.e_nuc, {});
  const int n = mi.n_spatial;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const double v = mi.h(p, q);
      if (std::abs(v) < kPruneTol) continue;
      for (int sp = 0; sp < 2; ++sp)
        hamil.add_term(v, {LadderOp{static_cast<std::uint32_t>(2 * p + sp), true},
                           LadderOp{static_cast<std::uint32_t>(2 * q + sp), false}});
    }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v = mi.g_at(p, q, r, s);
          if (std::abs(v) < kPruneTol) continue;
          for (int sp = 0; sp < 2; ++sp)
            for (int tp = 0; tp < 2; ++tp)
              hamil.add_term(0.5 * v,
                             {LadderOp{static_cast<std::uint32_t>(2 * p + sp), true},
                              LadderOp{static_cast<std::uint32_t>(2 * r + tp), true},
                              LadderOp{static_cast<std::uint32_t>(2 * s + tp), false},
                              LadderOp{static_cast<std::uint32_t>(2 * q + sp), false}});
        }
  return hamil;
}

MolecularIntegrals transform_integrals(const MolecularIntegrals& mi, const Eigen::MatrixXd& C) {
  if (C.rows() != mi.n_spatial || C.cols() != mi.n_spatial)
    throw Error("transform_integrals: dimension mismatch");
  MolecularIntegrals out = mi;
  out.h = C.transpose() * mi.h * C;
  const int n = mi.n_spatial;
  // sequential one-index contractions, g'_{p'q'r's'} = C_{pp'}C_{qq'}C_{rr'}C_{ss'} g_{pqrs}
  std::vector<double> a(mi.g), b(mi.g.size(), 0.0);
  auto at = [n](std::vector<double>& v, int p, int q, int r, int s) -> double& {
    return v[((static_cast<std::size_t>(p) * n + q) * n + r) * n + s];
  };
  for (int pass = 0; pass < 4; ++pass) {
    std::fill(b.begin(), b.end(), 0.0);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s) {
            const double v = at(a, p, q, r, s);
            if (v == 0.0) continue;
            // contract the first index, then rotate index positions so each
            // pass transforms the next index
            for (int pp = 0; pp < n; ++pp) at(b, q, r, s, pp) += C(p, pp) * v;
          }
    std::swap(a, b);
  }
  out.g = std::move(a);
  return out;
}

PropertyIntegrals transform_property(const PropertyIntegrals& pi, const Eigen::MatrixXd& C) {
  PropertyIntegrals out = pi;
  for (int c = 0; c < 3; ++c) out.components[c] = C.transpose() * pi.components[c] * C;
  return out;
}

Eigen::MatrixXd expm_antisymmetric(const Eigen::MatrixXd& kappa) {
  if ((kappa + kappa.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw Error("expm_antisymmetric: generator is not antisymmetric");
  return kappa.exp();
}

MolecularIntegrals rotate_integrals(const MolecularIntegrals& mi, const OrbitalRotation& rot) {
  if (rot.kappa.rows() != mi.n_spatial)
    throw Error("rotate_integrals: kappa dimension mismatch");
  // h~ = e^k h e^-k = C^T h C with C = e^-k
  return transform_integrals(mi, expm_antisymmetric(-rot.kappa));
}

PropertyIntegrals rotate_property(const PropertyIntegrals& pi, const OrbitalRotation& rot) {
  if (rot.kappa.rows() != pi.components[0].rows())
    throw Error("rotate_property: kappa dimension mismatch");
  return transform_property(pi, expm_antisymmetric(-rot.kappa));
}

double hf_determinant_energy(const MolecularIntegrals& mi) {
  if (mi.n_electrons % 2 != 0) throw Error("hf_determinant_energy: open-shell count");
  const int nocc = mi.n_electrons / 2;
  double e = mi.e_nuc;
  for (int i = 0; i < nocc; ++i) e += 2.0 * mi.h(i, i);
  for (int i = 0; i < nocc; ++i)
    for (int j = 0; j < nocc; ++j) e += 2.0 * mi.g_at(i, i, j, j) - mi.g_at(i, j, j, i);
  return e;
}

Mp2Result mp2_natural_orbitals(const MolecularIntegrals& mi) {
  if (mi.n_electrons % 2 != 0)
    throw Error("mp2_natural_orbitals: requires a closed-shell electron count");
  const int n = mi.n_spatial;
  const int nocc = mi.n_electrons / 2;
  const int nvir = n - nocc;

  // closed-shell Fock matrix from the HF density
  Eigen::MatrixXd F = mi.h;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      double v = 0.0;
      for (int j = 0; j < nocc; ++j) v += 2.0 * mi.g_at(p, q, j, j) - mi.g_at(p, j, j, q);
      F(p, q) += v;
    }

  // semicanonicalize: diagonalize occupied-occupied and virtual-virtual blocks
  Eigen::MatrixXd C1 = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd eps(n);
  if (nocc > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(F.topLeftCorner(nocc, nocc));
    C1.topLeftCorner(nocc, nocc) = es.eigenvectors();
    eps.head(nocc) = es.eigenvalues();
  }
  if (nvir > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(F.bottomRightCorner(nvir, nvir));
    C1.bottomRightCorner(nvir, nvir) = es.eigenvectors();
    eps.tail(nvir) = es.eigenvalues();
  }
  const MolecularIntegrals semi = transform_integrals(mi, C1);

  // unrelaxed MP2 one-particle density
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < nocc; ++i) D(i, i) = 2.0;
  double e_corr = 0.0;
  if (nvir > 0 && nocc > 0) {
    auto t = [&](int i, int j, int a, int b) {
      const double denom = eps[i] + eps[j] - eps[nocc + a] - eps[nocc + b];
      if (std::abs(denom) < 1e-8)
        throw Error("mp2_natural_orbitals: degenerate reference (vanishing denominator)");
      return semi.g_at(i, nocc + a, j, nocc + b) / denom;
    };
    for (int i = 0; i < nocc; ++i)
      for (int j = 0; j < nocc; ++j)
        for (int a = 0; a < nvir; ++a)
          for (int b = 0; b < nvir; ++b)
            e_corr += semi.g_at(i, nocc + a, j, nocc + b) *
                      (2.0 * t(i, j, a, b) - t(i, j, b, a));
    for (int i = 0; i < nocc; ++i)
      for (int j = 0; j < nocc; ++j) {
        double v = 0.0;
        for (int k = 0; k < nocc; ++k)
          for (int a = 0; a < nvir; ++a)
            for (int b = 0; b < nvir; ++b)
              v += t(i, k, a, b) * (2.0 * t(j, k, a, b) - t(j, k, b, a));
        D(i, j) -= 2.0 * v;
      }
    for (int a = 0; a < nvir; ++a)
      for (int b = 0; b < nvir; ++b) {
        double v = 0.0;
        for (int i = 0; i < nocc; ++i)
          for (int j = 0; j < nocc; ++j)
            for (int c = 0; c < nvir; ++c)
              v += t(i, j, a, c) * (2.0 * t(i, j, b, c) - t(i, j, c, b));
        D(nocc + a, nocc + b) += 2.0 * v;
      }
  }

  // natural orbitals: diagonalize the density within each block (no
  // occupied-virtual mixing in the unrelaxed density)
  Eigen::MatrixXd C2 = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd occ(n);
  if (nocc > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D.topLeftCorner(nocc, nocc));
    C2.topLeftCorner(nocc, nocc) = es.eigenvectors();
    occ.head(nocc) = es.eigenvalues();
  }
  if (nvir > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D.bottomRightCorner(nvir, nvir));
    C2.bottomRightCorner(nvir, nvir) = es.eigenvectors();
    occ.tail(nvir) = es.eigenvalues();
  }

  // sort all natural orbitals by descending occupation
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return occ[a] > occ[b]; });
  Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd occ_sorted(n);
  for (int k = 0; k < n; ++k) {
    perm(order[static_cast<std::size_t>(k)], k) = 1.0;
    occ_sorted[k] = occ[order[static_cast<std::size_t>(k)]];
  }

  Mp2Result out;
  out.transform = C1 * C2 * perm;
  out.integrals = transform_integrals(mi, out.transform);
  out.occupations = occ_sorted;
  out.correlation_energy = e_corr;
  return out;
}

}  // namespace ooq
