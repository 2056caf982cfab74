#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ooqeom/fermion.hpp"
#include "ooqeom/pauli.hpp"

namespace ooq {

/// Exact-diagonalization reference path, independent of the simulator and
/// used for validation.  Dense construction is capped at 14 qubits.

/// Full dense matrix of a Pauli sum in the statevector index convention
/// (qubit 0 = most significant index bit).
Eigen::MatrixXcd to_dense(const PauliSum& op);

/// Dense matrix of a ladder-operator sum built directly from determinant
/// bitstring algebra with the fermionic sign (-1)^(occupied below p):
/// a second construction path that never touches the qubit mapping.
/// Spin orbital p occupies index bit (n-1-p).
Eigen::MatrixXcd fermion_to_dense(const FermionOperator& op, int n_spin_orbitals);

/// Computational-basis slice with fixed particle number (and optionally
/// Sz = 0, counting even qubits as alpha).  `indices` are amplitude indices
/// in ascending order.
struct SectorBasis {
  int n_qubits = 0;
  std::vector<std::uint64_t> indices;

  static SectorBasis full(int n_qubits);
  static SectorBasis particle_sector(int n_qubits, int n_electrons, bool sz_zero);

  std::size_t dim() const { return indices.size(); }
};

/// Dense matrix of `op` restricted to a sector; throws if `op` maps any
/// basis state out of the sector with nonzero amplitude beyond tol.
Eigen::MatrixXcd dense_in_sector(const PauliSum& op, const SectorBasis& basis,
                                 bool check_closure = false, double tol = 1e-10);

struct ExactSpectrum {
  SectorBasis basis;
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // columns, matching `values`, in sector basis
};

/// Exact eigen-decomposition of a Hermitian Pauli sum, optionally
/// restricted to a particle-number / Sz=0 sector.
ExactSpectrum eigensolve(const PauliSum& hamiltonian, const SectorBasis& basis);

/// <bra_k | op | ket_0> for eigenvectors of an ExactSpectrum.
cplx exact_matrix_element(const ExactSpectrum& spec, const PauliSum& op, int bra, int ket);

}  // namespace ooq
