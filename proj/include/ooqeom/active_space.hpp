#pragma once

#include "ooqeom/integrals.hpp"
#include "ooqeom/pauli.hpp"

namespace ooq {

/// Spatial-orbital partition into inactive (doubly occupied), active and
/// virtual (empty) blocks, in that index order.  Spatial orbital p covers
/// qubits 2p and 2p+1.
struct ActiveSpaceSpec {
  int n_inactive = 0;
  int n_active = 0;
  int n_virtual = 0;

  int n_spatial() const { return n_inactive + n_active + n_virtual; }
  int n_qubits_full() const { return 2 * n_spatial(); }
  int n_qubits_active() const { return 2 * n_active; }
  int n_active_electrons(int n_electrons_total) const { return n_electrons_total - 2 * n_inactive; }

  /// Throws InputError if the partition is inconsistent with the integrals
  /// (size mismatch, odd or out-of-range active electron count).
  void validate(const MolecularIntegrals& mi) const;
};

/// Project a full-space operator onto the active qubits, with inactive
/// qubits fixed at |1> and virtual qubits at |0>: terms with X or Y on a
/// non-active qubit vanish, Z on an inactive qubit contributes a factor -1,
/// Z on a virtual qubit a factor +1.  The result acts on the active qubits
/// only, re-indexed from zero.
PauliSum project(const PauliSum& full, const ActiveSpaceSpec& spec);

/// Active-space integrals with the inactive orbitals folded in: the frozen
/// core energy is absorbed into e_nuc and the one-electron part becomes
/// h_eff(u,v) = h(u,v) + sum_i [2 (uv|ii) - (ui|iv)].  Electron count is
/// the active electron count.
MolecularIntegrals effective_active_integrals(const MolecularIntegrals& mi,
                                              const ActiveSpaceSpec& spec);

/// Qubit Hamiltonian on the 2*n_active active qubits, built directly from
/// the effective active-space integrals.  Equals project(jw(H_full)).
PauliSum active_hamiltonian(const MolecularIntegrals& mi, const ActiveSpaceSpec& spec);

}  // namespace ooq
