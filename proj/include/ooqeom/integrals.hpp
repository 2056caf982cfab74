#pragma once

#include <Eigen/Dense>
#include <array>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "ooqeom/fermion.hpp"

namespace ooq {

/// Spatial-orbital molecular integrals in chemist order, atomic units.
struct MolecularIntegrals {
  int n_spatial = 0;
  int n_electrons = 0;
  Eigen::MatrixXd h;       // one-electron, n x n, symmetric
  std::vector<double> g;   // (pq|rs), flattened n^4, 8-fold symmetric
  double e_nuc = 0.0;

  double& g_at(int p, int q, int r, int s) {
    return g[static_cast<std::size_t>(((p * n_spatial + q) * n_spatial + r)) *
                 static_cast<std::size_t>(n_spatial) + static_cast<std::size_t>(s)];
  }
  double g_at(int p, int q, int r, int s) const {
    return g[static_cast<std::size_t>(((p * n_spatial + q) * n_spatial + r)) *
                 static_cast<std::size_t>(n_spatial) + static_cast<std::size_t>(s)];
  }

  /// Violations of h symmetry / g 8-fold symmetry beyond tol, empty if clean.
  std::vector<std::string> check_invariants(double tol = 1e-10) const;
};

enum class PropertyKind { electric_dipole, magnetic_dipole };

std::string to_string(PropertyKind k);

/// One-electron property integrals (x, y, z components).  Electric dipole
/// components are symmetric, magnetic dipole components antisymmetric.
struct PropertyIntegrals {
  PropertyKind kind = PropertyKind::electric_dipole;
  std::array<Eigen::MatrixXd, 3> components;
  Eigen::Vector3d gauge_origin = Eigen::Vector3d::Zero();

  std::vector<std::string> check_invariants(double tol = 1e-10) const;
};

/// Antisymmetric orbital-rotation generator with free parameters restricted
/// to the virtual-inactive, active-inactive and virtual-active blocks.
struct OrbitalRotation {
  Eigen::MatrixXd kappa;                          // n x n, antisymmetric
  std::vector<std::pair<int, int>> free_parameters;  // (p, q) with p > q

  static OrbitalRotation zero(int n);
  /// Parameter blocks for an inactive/active/virtual split with the given
  /// spatial block sizes, in (active,inactive), (virtual,inactive),
  /// (virtual,active) order, lexicographic within each block.
  static OrbitalRotation for_blocks(int n_inactive, int n_active, int n_virtual);

  int n_parameters() const { return static_cast<int>(free_parameters.size()); }
  void set_parameters(const Eigen::VectorXd& values);
  Eigen::VectorXd parameters() const;
};

/// --- file formats -------------------------------------------------------

MolecularIntegrals parse_fcidump(std::istream& in);
MolecularIntegrals parse_fcidump_file(const std::string& path);
void serialize_fcidump(const MolecularIntegrals& mi, std::ostream& out);

PropertyIntegrals parse_propints(std::istream& in);
PropertyIntegrals parse_propints_file(const std::string& path);
void serialize_propints(const PropertyIntegrals& pi, std::ostream& out);

/// --- operators and transforms -------------------------------------------

/// Second-quantized spin-orbital Hamiltonian; spatial orbital p maps to
/// spin orbitals 2p (alpha) and 2p+1 (beta), two-electron part
/// (1/2) sum (pq|rs) a+_{p s} a+_{r t} a_{s t} a_{q s}.  Includes e_nuc as
/// an identity term.
FermionOperator build_hamiltonian(const MolecularIntegrals& mi);

/// General orthogonal one- and two-electron transform; column p' of C is
/// the new orbital p' expressed in the old basis.
MolecularIntegrals transform_integrals(const MolecularIntegrals& mi, const Eigen::MatrixXd& C);
PropertyIntegrals transform_property(const PropertyIntegrals& pi, const Eigen::MatrixXd& C);

/// Integral rotation by exp(kappa) per the orbital-rotation convention
/// h~ = e^k h e^-k.
MolecularIntegrals rotate_integrals(const MolecularIntegrals& mi, const OrbitalRotation& rot);
PropertyIntegrals rotate_property(const PropertyIntegrals& pi, const OrbitalRotation& rot);

/// exp(kappa) for the antisymmetric generator, accurate to ~1e-12.
Eigen::MatrixXd expm_antisymmetric(const Eigen::MatrixXd& kappa);

/// Closed-shell restricted HF determinant energy for integrals already in
/// an MO basis (first n_electrons/2 orbitals occupied).
double hf_determinant_energy(const MolecularIntegrals& mi);

struct Mp2Result {
  MolecularIntegrals integrals;   // transformed to the natural-orbital basis
  Eigen::MatrixXd transform;      // orthogonal, columns = natural orbitals
  Eigen::VectorXd occupations;    // descending, sum = n_electrons
  double correlation_energy = 0.0;
};

/// MP2 natural orbitals from the unrelaxed one-particle density.  Requires
/// a closed-shell electron count and integrals in a converged HF MO basis.
Mp2Result mp2_natural_orbitals(const MolecularIntegrals& mi);

}  // namespace ooq
