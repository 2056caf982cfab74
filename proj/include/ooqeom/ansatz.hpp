#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ooqeom/fermion.hpp"
#include "ooqeom/statevector.hpp"

namespace ooq {

/// Spin-adapted excitation operators G_I over the given occupied and
/// virtual spatial-orbital index lists, in the fixed deterministic order
///   1. singles            (1/sqrt(2)) E_ai
///   2. paired doubles     N_abij (E_ai E_bj + E_aj E_bi), a >= b, i >= j,
///                         N_abij = 1 / (2 sqrt((1+d_ab)(1+d_ij)))
///   3. triplet doubles    (1/(2 sqrt(3))) (E_ai E_bj - E_aj E_bi),
///                         a > b, i > j
/// with lexicographic loops inside each family.
std::vector<FermionOperator> spin_adapted_excitations(const std::vector<int>& occupied,
                                                      const std::vector<int>& virtuals);

/// One Pauli rotation exp(-i angle/2 op) of the trotterized ansatz; the
/// rotation angle is prefactor * theta[param_index].
struct AnsatzComponent {
  PauliString op;
  int param_index = 0;
  double prefactor = 0.0;
};

/// One-step trotterized unitary product ansatz
///   U(theta) = prod_I exp(theta_I (G_I - G_I^dag))
/// acting on the active qubits, each factor expanded into commuting-free
/// Pauli rotations in canonical string order.
class Ansatz {
 public:
  Ansatz(int n_qubits, int n_params, std::vector<AnsatzComponent> components)
      : n_qubits_(n_qubits), n_params_(n_params), components_(std::move(components)) {}

  int n_qubits() const { return n_qubits_; }
  int n_params() const { return n_params_; }
  const std::vector<AnsatzComponent>& components() const { return components_; }

  /// |psi> -> U(theta)|psi>.
  void apply(Statevector& sv, const Eigen::VectorXd& theta) const;

  /// Same, with the rotation angle of one component shifted by delta
  /// (parameter-shift evaluations).
  void apply_shifted(Statevector& sv, const Eigen::VectorXd& theta, std::size_t component,
                     double delta) const;

 private:
  int n_qubits_;
  int n_params_;
  std::vector<AnsatzComponent> components_;
};

/// UCCSD ansatz for a closed-shell active space with n_occupied +
/// n_virtual spatial orbitals (local active indexing, occupied first).
Ansatz build_uccsd_ansatz(int n_occupied, int n_virtual);

}  // namespace ooq
